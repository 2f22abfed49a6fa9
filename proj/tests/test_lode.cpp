#include <doctest.h>

#include "lvsm/exprio.hpp"
#include "lvsm/lode.hpp"

using namespace lvsm;

namespace {
SymId T() { return intern("t"); }
Frac E(const std::string& s) { return parse_ratfunc(s, SymbolTable({"t"}, {"alpha", "beta"})); }
}  // namespace

TEST_CASE("algebraic_solution_test verdicts") {
  auto v = algebraic_solution_test(E("3/(2*t)"), T());
  CHECK(v.kind == VerdictKind::HasAlgebraic);
  REQUIRE(v.witness.size() == 1);
  CHECK(v.witness[0].second == Rational(3, 2));
  CHECK(witness_log_derivative(v.witness, T()) == E("3/(2*t)"));

  CHECK(algebraic_solution_test(E("1/t + 1"), T()).reason == "nonzero polynomial part");
  CHECK(algebraic_solution_test(E("1/t^2"), T()).reason == "higher-order pole");
  CHECK(algebraic_solution_test(E("alpha/t"), T()).reason == "non-rational residue");
  CHECK(algebraic_solution_test(E("1/(t^2+1)"), T()).reason == "non-rational residue");

  // 2t/(t^2+1) = (t^2+1)'/(t^2+1)
  auto w = algebraic_solution_test(E("2*t/(t^2+1)"), T());
  CHECK(w.kind == VerdictKind::HasAlgebraic);
  CHECK(algebraic_solution_test(Frac(), T()).kind == VerdictKind::HasAlgebraic);
  // residues 1/2 and -1/3 on different factors
  auto m = algebraic_solution_test(E("1/(2*t) - 1/(3*(t-1))"), T());
  CHECK(m.kind == VerdictKind::HasAlgebraic);
  CHECK(m.witness.size() == 2);
}

TEST_CASE("lemma family checks") {
  auto no = lemma_family_check(E("alpha"), E("-1"), E("-beta"), LemmaFamily::Classical, T());
  CHECK(no.kind == VerdictKind::NoAlgebraic);
  auto und = lemma_family_check(E("2"), E("0"), E("1"), LemmaFamily::Classical, T());
  CHECK(und.kind == VerdictKind::Undecided);
  CHECK(und.reason == "lemma inapplicable: q is rational");
  CHECK(lemma_family_check(E("1"), E("-1"), E("5"), LemmaFamily::TwoD, T()).kind == VerdictKind::NoAlgebraic);

  // c1 = 0 with irrational q has the rational solution c2*t/(1-q)
  auto ce = lemma_family_check(E("alpha"), E("0"), E("beta"), LemmaFamily::Classical, T());
  REQUIRE(ce.kind == VerdictKind::HasAlgebraic);
  REQUIRE(ce.solution);
  Frac v = *ce.solution;
  CHECK(v.derivative(T()) - E("alpha/t") * v - E("beta") == Frac());
}

TEST_CASE("rational_solution_search") {
  auto a = rational_solution_search(E("2/t"), Frac(), 3, T());
  REQUIRE(a);
  CHECK(a->derivative(T()) == E("2/t") * *a);
  CHECK(*a / E("t^2") == Frac(a->num().leading_coefficient()) / Frac(a->den().leading_coefficient()));
  auto b = rational_solution_search(E("-1/t"), Frac(1), 2, T());
  REQUIRE(b);
  CHECK(*b == E("t/2"));
  // (t/(1-alpha))' = 1/(1-alpha) = (alpha/t) t/(1-alpha) + 1
  auto c = rational_solution_search(E("alpha/t"), Frac(1), 4, T());
  REQUIRE(c);
  CHECK(*c == E("t/(1-alpha)"));
  // lemma applies (c1 != 0): the search must not contradict it
  CHECK_FALSE(rational_solution_search(E("alpha/t - 1"), E("beta"), 4, T()));
  CHECK_FALSE(rational_solution_search(E("alpha/t"), Frac(), 4, T()));
}
