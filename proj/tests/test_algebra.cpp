#include <doctest.h>

#include "lvsm/factor.hpp"
#include "lvsm/pfrac.hpp"
#include "lvsm/pkernel.hpp"

using namespace lvsm;

namespace {
Poly sym(const char* n) { return Poly::symbol(intern(n)); }
}  // namespace

TEST_CASE("polynomial gcd and exact division") {
  Poly t = sym("t");
  CHECK(gcd(t * t - 1, t - 1) == t - 1);
  Poly x = sym("X"), y = sym("Y");
  auto q = divide_exact(x * x * y, x);
  REQUIRE(q);
  CHECK(*q == x * y);
}

TEST_CASE("multivariate gcd with missing powers of the main variable") {
  // content in t is zero at t^1; this used to read as a constant content
  Poly t = sym("t"), z = sym("z"), w = sym("w"), al = sym("alpha"), b = sym("b");
  Poly common = 5 * al * al * b + 3 * w * w;
  Poly a = common * (5 * t * t * z + 2);
  Poly c = common * (3 * b * t * w * z * z - 5 * w * z * z + 2 * t - 7 * al);
  Poly g = gcd(a, c);
  CHECK(g == primitive_part(common));
  REQUIRE(divide_exact(a, g));
  REQUIRE(divide_exact(c, g));
  CHECK(gcd(*divide_exact(a, g), *divide_exact(c, g)) == Poly(1));
}

TEST_CASE("multivariate gcd of coprime inputs stays small") {
  Poly t = sym("t"), z = sym("z"), w = sym("w"), al = sym("alpha"), b = sym("b");
  Poly a = 5 * al * b * b * t * t * w.pow(3) * z - 4 * al * al * b * t * t * w - al * b * t * t * w +
           20 * b * b * w * w * z - 20 * b * w.pow(3) * z + 15 * b * w * w * z - 16 * al * b + 16 * al * w -
           12 * al - 4 * b + 4 * w - 3;
  Poly c = -8 * al.pow(4) * b.pow(3) - 8 * al.pow(3) * b * b * w * w - 8 * al.pow(3) * b * b * z * z +
           2 * al * al * b.pow(4) * t - 4 * al * al * b * t * z - 4 * al * t * w * w * z - 4 * al * t * z.pow(3) +
           b * b * t * t * z - 20 * al * al * b * z - 20 * al * w * w * z - 20 * al * z.pow(3) + 5 * b * b * t * z +
           12 * al * al * b + 12 * al * w * w + 12 * al * z * z - 3 * b * b * t;
  Poly g = gcd(a * (t + w), c * (t + w));
  CHECK(g == t + w);
}

TEST_CASE("squarefree decomposition of t^3 + t^2") {
  SymId t = intern("t");
  UPoly p = UPoly::from_poly(sym("t").pow(3) + sym("t").pow(2), t);
  auto sf = squarefree(p);
  REQUIRE(sf.size() == 2);
  CHECK(sf[0].first == UPoly::from_poly(sym("t") + 1, t));
  CHECK(sf[0].second == 1);
  CHECK(sf[1].first == UPoly::from_poly(sym("t"), t));
  CHECK(sf[1].second == 2);
}

TEST_CASE("partial fractions of (3t-1)/(t(t-1))") {
  SymId t = intern("t");
  Poly tt = sym("t");
  Frac f(3 * tt - 1, tt * (tt - 1));
  auto pf = partial_fractions(f, t);
  CHECK(pf.polynomial_part.is_zero());
  REQUIRE(pf.terms.size() == 2);
  CHECK(pf.recompose() == f);
}

TEST_CASE("residue tests") {
  SymId t = intern("t");
  Poly tt = sym("t");
  auto r = residue_rationality(Frac(Poly(3), 2 * tt), UPoly::from_poly(tt, t));
  CHECK(r.kind == ResidueKind::Rational);
  CHECK(r.value == make_rational(3, 2));
  auto r2 = residue_rationality(Frac(Poly(1), tt * tt + 1), UPoly::from_poly(tt * tt + 1, t));
  CHECK(r2.kind == ResidueKind::NonRational);
  auto r3 = residue_rationality(Frac(sym("alpha"), tt), UPoly::from_poly(tt, t));
  CHECK(r3.kind == ResidueKind::NonRational);
}

TEST_CASE("parametric kernel of [[q,1],[1,q]]") {
  SymId q = intern("q");
  Poly qq = Poly::symbol(q);
  FracMatrix m{{Frac(qq), Frac(1)}, {Frac(1), Frac(qq)}};
  auto tree = parametric_kernel(m, 2, {q});
  CHECK_FALSE(tree.exhausted);
  REQUIRE(tree.leaves.size() == 3);
  int trivial = 0;
  for (const auto& leaf : tree.leaves) {
    if (leaf.kernel.empty()) {
      ++trivial;
      continue;
    }
    REQUIRE(leaf.conditions.assignments.size() == 1);
    Rational v = leaf.conditions.assignments[0].second.constant_value();
    REQUIRE(leaf.kernel.size() == 1);
    // kernel vector (x, 1) with q x + 1 = 0
    CHECK(leaf.kernel[0][0] == Frac(-1 / v));
  }
  CHECK(trivial == 1);
}
