#include <doctest.h>

#include "lvsm/exprio.hpp"

using namespace lvsm;

namespace {
SymbolTable xy_table() { return SymbolTable({"X", "Y"}, {"a", "b", "c", "d"}); }
}  // namespace

TEST_CASE("parse and format polynomials") {
  auto t = xy_table();
  MPoly p = parse_poly("X*(a*Y + b)", t);
  CHECK(format_poly(p) == "a*X*Y + b*X");
  CHECK(format_poly(parse_poly("X^2 - 1/2", t)) == "X^2 - 1/2");
  CHECK(format_poly(parse_poly("0", t)) == "0");
  CHECK(format_poly(parse_poly("X/b + d/b*Y", t)) == "(1/b)*X + (d/b)*Y");
  CHECK(parse_poly(format_poly(parse_poly("X/b + d/b*Y", t)), t) == parse_poly("X/b + d/b*Y", t));
}

TEST_CASE("parse errors carry offsets") {
  auto t = xy_table();
  try {
    parse_poly("X +", t);
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 3);
  }
  CHECK_THROWS_AS(parse_poly("X^-1", t), ParseError);
  CHECK_THROWS_AS(parse_poly("2X", t), ParseError);
  CHECK_THROWS_AS(parse_poly("Z", t), ParseError);
  CHECK_THROWS_AS(parse_poly("1/X", t), ParseError);
  CHECK_THROWS_AS(parse_poly("X/(a-a)", t), ParseError);
  CHECK_THROWS_AS(parse_poly("X^(1/2)", t), ParseError);
  CHECK_THROWS_AS(parse_poly("X^1/2", t), ParseError);
  CHECK_THROWS_AS(parse_poly("X^1.5", t), ParseError);
  CHECK(parse_ratfunc("X^2/(X + 1)", t) == parse_ratfunc("(X*X)/(1 + X)", t));
  CHECK(parse_poly("X^2/a", t) == parse_poly("(1/a)*X*X", t));
}

TEST_CASE("system presets") {
  auto s = preset_system("lv-classical");
  REQUIRE(s);
  auto t = s->symbols();
  CHECK(parse_poly(s->fprime.at("X"), t) == parse_poly("a*X*Y + b*X", t));
  CHECK(parse_poly(s->fprime.at("Y"), t) == parse_poly("c*X*Y + d*Y", t));
  CHECK(s->nondegenerate == std::vector<std::string>{"X", "Y"});
  auto s2 = preset_system("lv-2d");
  REQUIRE(s2);
  CHECK(parse_poly(s2->fprime.at("Y"), t) == parse_poly("c*X*Y + d*Y^2", t));
  try {
    parse_system("vars = X, Y\nfprime.X = X\n");
    FAIL("expected error");
  } catch (const SpecError& e) {
    CHECK(std::string(e.what()) == "missing derivative for Y");
  }
  CHECK_THROWS_AS(parse_system("vars = X\nfprime.X = X\n"), SpecError);
  CHECK_THROWS_AS(parse_system("vars = X, Y\nfprime.X = X*q\nfprime.Y = Y\n"), SpecError);
  auto tw = parse_system("vars = X, Y\nparams = b\nfprime.X = X*(Y + b)\nfprime.Y = Y*(X + b)\ntower.z = b*z\n");
  REQUIRE(tw.tower.size() == 1);
}
