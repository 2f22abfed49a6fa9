#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lvsm/brestovski.hpp"
#include "lvsm/numerics.hpp"

using namespace lvsm;

namespace {
PlanarSystem lv_sqrt2() { return PlanarSystem::make("X*(Y+1)", "Y*(X+d)", {"d"}); }
const ParamValues kSqrt2{{"d", std::sqrt(2.0)}};
}  // namespace

TEST_CASE("integrate: exponential and blow-up") {
  auto exp_sys = PlanarSystem::make("X", "Y", {});
  IntegrateOptions o;
  o.rtol = 1e-10;
  auto tr = integrate(exp_sys, {}, {1, 1}, 1.0, o);
  CHECK(tr.reason == Termination::HorizonReached);
  CHECK(tr.t.size() == 201);
  CHECK(std::abs(tr.state.back()[0] - std::exp(1.0)) < 1e-8);

  auto sq = PlanarSystem::make("X^2", "0", {});
  auto b = integrate(sq, {}, {1, 0.5}, 2.0, o);
  CHECK(b.reason == Termination::BlowUpGuard);
  CHECK(b.t.back() < 1.0);

  auto lv = integrate(lv_sqrt2(), kSqrt2, {0.5, 0.25}, 1.0, o);
  for (const auto& s : lv.state) CHECK((std::isfinite(s[0]) && std::isfinite(s[1])));
  CHECK(std::is_sorted(lv.t.begin(), lv.t.end()));

  CHECK_THROWS_AS(integrate(exp_sys, {}, {1, 1}, 1.0, IntegrateOptions{1e-2}), NumericError);
  CHECK_THROWS_AS(integrate(lv_sqrt2(), {}, {1, 1}, 1.0), NumericError);
  auto preset = PlanarSystem::from_spec(*preset_system("lv-classical"));
  CHECK_THROWS_AS(integrate(preset, {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}}, {0, 1}, 1.0), NumericError);
}

TEST_CASE("fixed-step order of the pair") {
  auto exp_sys = PlanarSystem::make("X", "Y", {});
  double prev = 0;
  for (std::size_t n : {4, 8, 16, 32}) {
    double err = std::abs(integrate_fixed(exp_sys, {}, {1, 1}, 1.0, n)[0] - std::exp(1.0));
    if (prev > 0) {
      CHECK(prev / err >= 16);
      CHECK(prev / err <= 64);
    }
    prev = err;
  }
}

TEST_CASE("conservation drift") {
  auto sys = lv_sqrt2();
  auto H = first_integral(sys);
  auto tr = integrate(sys, kSqrt2, {0.5, 0.25}, 1.0, IntegrateOptions{1e-10});
  double drift = conservation_drift(H, tr);
  CHECK(drift <= 1e-6);
  LogLinearExpr wrong;
  wrong.rational = parse_ratfunc("X + Y", sys.symbols());
  CHECK(conservation_drift(wrong, tr) > 1e-3);
  LogLinearExpr five;
  five.rational = Frac(5);
  CHECK(conservation_drift(five, tr) == 0);
  auto coarse = integrate(sys, kSqrt2, {0.5, 0.25}, 1.0, IntegrateOptions{1e-8});
  auto fine = integrate(sys, kSqrt2, {0.5, 0.25}, 1.0, IntegrateOptions{1e-12});
  CHECK(conservation_drift(H, coarse) > conservation_drift(H, fine));
}

TEST_CASE("relation and ratio probes") {
  auto sys = lv_sqrt2();
  auto t1 = integrate(sys, kSqrt2, {0.5, 0.25}, 1.0);
  auto t2 = integrate(sys, kSqrt2, {0.6, 0.3}, 1.0);
  auto same = relation_probe({t1, t1}, 1);
  CHECK(same.ratio < 1e-10);
  CHECK(same.verdict == RelationVerdict::RelationEvidence);
  auto single = relation_probe({t1}, 2);
  CHECK(single.monomials.size() == 6);
  CHECK(single.verdict == RelationVerdict::NoRelationEvidence);
  auto pair = relation_probe({t1, t2}, 2);
  CHECK(pair.monomials.size() == 15);
  CHECK(pair.samples == 201);
  // spectrum is sorted and starts at the largest diagonal entry
  CHECK(std::is_sorted(pair.spectrum.rbegin(), pair.spectrum.rend()));
  CHECK_THROWS_AS(relation_probe({t1, t2}, 4), NumericError);  // 70 monomials need 210 samples
  auto rp = ratio_probe(t1, t2);
  CHECK(rp.verdict == RatioVerdict::IndependentEvidence);
  auto self = ratio_probe(t1, t1);
  CHECK(self.verdict == RatioVerdict::DependenceCandidate);
  CHECK(self.epsilon == doctest::Approx(1.0));

  std::ostringstream csv;
  write_csv(t1, csv);
  CHECK(csv.str().rfind("t,x,y\n0,0.5,0.25\n", 0) == 0);
}

TEST_CASE("qratio") {
  auto sym = PlanarSystem::make("X", "Y", {"b", "d"});
  auto b = parse_ratfunc("b", sym.symbols()), d = parse_ratfunc("d", sym.symbols());
  CHECK(qratio_check(b, d).kind == QRatioKind::IrrationalGeneric);
  auto r = qratio_check(Frac(2), Frac(3));
  CHECK(r.kind == QRatioKind::Rational);
  CHECK(r.value == Rational(3, 2));
  auto l = qratio_check(1.0, 0.5000000000001);
  CHECK(l.kind == QRatioKind::LikelyRational);
  CHECK(l.value == Rational(1, 2));
  CHECK(qratio_check(1.0, std::sqrt(2.0)).kind == QRatioKind::Unknown);
  CHECK_THROWS(qratio_check(0.0, 1.0));
}

TEST_CASE("normalization and Brestovski form") {
  SymbolTable ctx({"X", "Y"}, {"a", "b", "c", "d"});
  auto P = [&](const std::string& s) { return parse_ratfunc(s, ctx); };
  std::vector<std::string> ps{"a", "b", "c", "d"};
  auto [n, rec] = normalize_system(LvFamily::Classical, Frac(2), Frac(3), Frac(5), Frac(7), ps);
  CHECK(rec.ratio == Frac(Rational(7, 3)));
  auto [ns, rs] = normalize_system(LvFamily::Classical, P("a"), P("b"), P("c"), P("d"), ps);
  CHECK(rs.ratio == P("d/b"));
  CHECK(ns.g.to_frac() == P("Y*(X + d/b)"));
  auto [n2, r2] = normalize_system(LvFamily::TwoD, P("a"), P("b"), P("c"), P("d"), ps);
  CHECK(r2.ratio == P("d/a"));
  CHECK(n2.g.to_frac() == P("Y*(X + d/a*Y)"));
  CHECK_THROWS(normalize_system(LvFamily::Classical, Frac(0), Frac(1), Frac(1), Frac(1), ps));

  auto sys = lv_system(LvFamily::Classical, Frac(1), P("b"), Frac(1), P("d"), ps);
  auto bf = to_brestovski(sys);
  CHECK(bf.terms.size() == 2);
  CHECK(bf.zprime_of_xy == P("b*X - d*Y"));
  CHECK(bf.coefficient_status == "IrrationalGeneric");
  auto deg = lv_system(LvFamily::Classical, Frac(1), P("b"), Frac(1), P("b"), ps);
  CHECK_THROWS_AS(to_brestovski(deg), Degenerate);

  auto H = first_integral(sys);
  CHECK(H.rational == P("X - Y"));
  CHECK(loglinear_derive(H, sys).is_zero());
  auto Hd = first_integral(deg);
  CHECK(loglinear_derive(Hd, deg).is_zero());
  LogLinearExpr wrong;
  wrong.rational = P("X + Y");
  CHECK(loglinear_derive(wrong, sys) == P("2*X*Y + b*X + d*Y"));
}
