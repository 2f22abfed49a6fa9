#include <doctest.h>

#include <chrono>
#include <set>

#include "lvsm/darboux.hpp"

using namespace lvsm;

namespace {
PlanarSystem lv(const std::map<std::string, std::string>& o = {}) {
  return PlanarSystem::from_spec(*preset_system("lv-classical"), o);
}
MPoly P(const PlanarSystem& s, const std::string& t) { return parse_poly(t, s.symbols()); }
}  // namespace

TEST_CASE("ds_apply and invariant_check on the classical system") {
  auto s = lv();
  CHECK(ds_apply(s, P(s, "X*Y")) == P(s, "a*X*Y^2 + c*X^2*Y + (b+d)*X*Y"));
  CHECK(ds_apply(s, P(s, "X")) == s.f);
  CHECK(ds_apply(s, P(s, "1")).is_zero());
  auto r = invariant_check(s, P(s, "X*Y"));
  REQUIRE(r.invariant);
  CHECK(r.cofactor == P(s, "a*Y + c*X + b + d"));
  auto deg = lv({{"a", "1"}, {"c", "1"}, {"d", "b"}});
  auto r2 = invariant_check(deg, P(deg, "X - Y"));
  REQUIRE(r2.invariant);
  CHECK(r2.cofactor == P(deg, "b"));
  auto gen = lv({{"a", "1"}, {"c", "1"}});
  CHECK_FALSE(invariant_check(gen, P(gen, "X + Y")).invariant);
  CHECK_THROWS(invariant_check(gen, MPoly(gen.vars)));
}

std::set<std::string> irreducible(const DarbouxCertificate& cert) {
  std::set<std::string> out;
  for (const auto* f : cert.irreducible()) out.insert(format_poly(f->poly) + " | " + format_poly(f->cofactor));
  return out;
}

TEST_CASE("darboux search, degenerate case") {
  auto s = lv({{"a", "1"}, {"c", "1"}, {"d", "b"}});
  auto cert = darboux_search(s, 1);
  CHECK(cert.complete);
  CHECK(irreducible(cert) == std::set<std::string>{"X | Y + b", "Y | X + b", "X - Y | b"});
}

TEST_CASE("darboux search, generic LV degree 2") {
  auto s = lv({{"a", "1"}, {"c", "1"}});
  auto t0 = std::chrono::steady_clock::now();
  auto cert = darboux_search(s, 2);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 60);
  CHECK(cert.complete);
  CHECK(irreducible(cert) == std::set<std::string>{"X | Y + b", "Y | X + d"});
  for (const auto& f : cert.families) {
    CHECK(f.poly.terms().size() == 1);
    CHECK(f.reducible == (f.poly.degree() == 2));
  }
  CHECK(cert.families.size() == 5);  // X, Y, X^2, X*Y, Y^2
}

TEST_CASE("darboux search with tower z' = b z") {
  auto spec = parse_system("vars = X, Y\nparams = b\nfprime.X = X*(Y + b)\nfprime.Y = Y*(X + b)\ntower.z = b*z\n");
  auto s = PlanarSystem::from_spec(spec);
  auto cert = darboux_search(s, 1, {Frac(1), Frac::symbol(intern("z"))});
  CHECK(cert.complete);
  CHECK(irreducible(cert) == std::set<std::string>{"X | Y + b", "Y | X + b", "X - Y - lambda1*z | b"});
}

TEST_CASE("case assignments that cancel an earlier pivot are discarded") {
  // the 2d system used to divide by zero here
  auto s = PlanarSystem::make("X*(Y + b)", "Y*(X + d*Y)", {"b", "d"});
  for (unsigned n : {1u, 2u}) {
    auto cert = darboux_search(s, n);
    CHECK(cert.complete);
    std::set<std::string> irr;
    for (const auto* f : cert.irreducible()) irr.insert(format_poly(f->poly));
    CHECK(irr == std::set<std::string>{"X", "Y"});
  }
}
