// Acceptance checks, one line per criterion. With no arguments all nine run;
// otherwise only the listed criterion numbers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lvsm/brestovski.hpp"
#include "lvsm/darboux.hpp"
#include "lvsm/lode.hpp"
#include "lvsm/numerics.hpp"
#include "lvsm/puiseux.hpp"
#include "support/suites.hpp"

using namespace lvsm;

namespace {

// Pinned tolerances.
constexpr double kCofactorSeconds = 1.0;
constexpr double kSearchSeconds = 60.0;
constexpr double kVerdictSeconds = 1.0;
constexpr double kDriftTol = 1e-6;
constexpr double kIntegrateRtol = 1e-10;
constexpr double kNoRelation = 1e-6;
constexpr double kPlanted = 1e-10;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      else detail.str("");
      pass = false;
      detail << what;
    }
  }
};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

PlanarSystem classical_preset(const std::map<std::string, std::string>& o = {}) {
  return PlanarSystem::from_spec(*preset_system("lv-classical"), o);
}

void xy_cofactor(Outcome& out) {
  auto t0 = Clock::now();
  auto sys = classical_preset();
  auto res = invariant_check(sys, parse_poly("X*Y", sys.symbols()));
  double secs = since(t0);
  MPoly want = parse_poly("a*Y + c*X + b + d", sys.symbols());
  out.require(res.invariant, "XY not invariant");
  out.require(res.invariant && res.cofactor == want, "cofactor " + format_poly(res.cofactor));
  out.require(secs < kCofactorSeconds, "took " + fmt(secs) + " s");
  if (out.pass) out.detail << "cofactor " << format_poly(res.cofactor) << ", " << fmt(secs) << " s";
}

// Kernel spanned by coordinate vectors, i.e. by single ansatz monomials.
bool monomial_kernel(const CaseLeaf& leaf, const DarbouxCertificate& cert) {
  if (leaf.kernel.empty()) return true;
  FracMatrix m = leaf.kernel;
  rref(m, cert.ansatz.size());
  for (const auto& row : m) {
    std::size_t nz = 0;
    for (const auto& e : row) nz += !e.is_zero();
    if (nz > 1) return false;
  }
  return true;
}

void bounded_search(Outcome& out) {
  auto sys = classical_preset({{"a", "1"}, {"c", "1"}});
  auto t0 = Clock::now();
  auto cert = darboux_search(sys, 2);
  double secs = since(t0);
  out.require(cert.complete, "search incomplete");
  std::set<std::string> irr;
  for (const auto* f : cert.irreducible()) irr.insert(format_poly(f->poly));
  out.require(irr == std::set<std::string>{"X", "Y"}, "unexpected irreducible invariants");
  for (const auto& f : cert.families)
    out.require(f.poly.terms().size() == 1 && f.free_constants.empty(), "non-monomial family " + format_poly(f.poly));
  for (const auto& a : cert.ansatz) out.require(a.is_polynomial() && a.num().size() == 1, "ansatz is not monomial");
  std::size_t bad = 0;
  for (const auto& leaf : cert.tree.leaves) {
    out.require(leaf.status == LeafStatus::Solved, "unsolved leaf");
    bad += !monomial_kernel(leaf, cert);
  }
  out.require(bad == 0, std::to_string(bad) + " leaves with a non-monomial kernel");
  out.require(secs < kSearchSeconds, "took " + fmt(secs) + " s");
  if (out.pass)
    out.detail << "irreducible {X, Y}, " << cert.families.size() << " monomial families, " << cert.tree.leaves.size()
               << " leaves all monomial or trivial, " << fmt(secs) << " s";
}

void degenerate(Outcome& out) {
  auto sys = classical_preset({{"a", "1"}, {"c", "1"}, {"d", "b"}});
  auto cert = darboux_search(sys, 1);
  std::set<std::string> irr;
  for (const auto* f : cert.irreducible()) irr.insert(format_poly(f->poly) + " | " + format_poly(f->cofactor));
  out.require(cert.complete && irr.count("X - Y | b"), "X - Y with cofactor b not found");

  auto tower = PlanarSystem::from_spec(*preset_system("lv-degenerate-tower"));
  auto tcert = darboux_search(tower, 1, {Frac(1), Frac::symbol(intern("z"))});
  bool family = false;
  for (const auto* f : tcert.irreducible()) {
    if (f->free_constants.size() != 1) continue;
    Frac lam = Frac::symbol(f->free_constants[0]);
    MPoly want = parse_poly("X - Y", tower.symbols()) - MPoly::from_frac(lam * Frac::symbol(intern("z")), tower.vars);
    family = family || (f->poly == want && f->cofactor == parse_poly("b", tower.symbols()));
  }
  out.require(tcert.complete && family, "family X - Y - lambda*z not found");
  if (out.pass) out.detail << "X - Y (cofactor b); X - Y - lambda*z (cofactor b) over z' = b z";
}

void verdicts(Outcome& out) {
  SymId t = intern("t");
  SymbolTable ctx({"t"}, {"alpha"});
  struct Case {
    const char* f;
    VerdictKind want;
  };
  const Case cases[] = {{"3/(2*t)", VerdictKind::HasAlgebraic},
                        {"alpha/t", VerdictKind::NoAlgebraic},
                        {"1/t + 1", VerdictKind::NoAlgebraic},
                        {"1/t^2", VerdictKind::NoAlgebraic},
                        {"1/(t^2 + 1)", VerdictKind::NoAlgebraic}};
  double worst = 0;
  for (const auto& c : cases) {
    auto t0 = Clock::now();
    auto v = algebraic_solution_test(parse_ratfunc(c.f, ctx), t);
    double secs = since(t0);
    worst = std::max(worst, secs);
    out.require(v.kind == c.want, std::string(c.f) + " -> " + to_string(v.kind));
    out.require(secs < kVerdictSeconds, std::string(c.f) + " took " + fmt(secs) + " s");
  }
  if (out.pass) out.detail << "5 verdicts exact, slowest " << fmt(worst) << " s";
}

void lemma_equations(Outcome& out) {
  auto classical = PlanarSystem::make("X*(Y+1)", "Y*(X+alpha)", {"alpha", "beta"});
  auto twod = PlanarSystem::make("X*(Y+1)", "Y*(X+gamma*Y)", {"gamma"});
  SymbolTable ctx({"X", "Y"}, {"alpha", "beta", "gamma", "r", "k", "m", "s", "a0", "a0'", "b0", "b0_X"});
  auto E = [&](const char* s) { return parse_ratfunc(s, ctx); };
  auto first = [](const PlanarSystem& sys, ExponentCase c) {
    AnsatzSpec spec;
    spec.expanded = "X";
    spec.series_var = "Y";
    spec.exponent_case = c;
    auto cs = ansatz_constraints(sys, spec);
    return cs.constraints.empty() ? std::optional<Frac>() : cs.constraints[0].residual;
  };
  out.require(first(classical, ExponentCase::negative()) == E("r*a0^2"), "r<0: r*a0^2");
  out.require(first(classical, ExponentCase::zero()) == E("a0' - a0"), "r=0: a0' = a0");
  out.require(first(classical, ExponentCase::positive()) == E("a0' - (1 - r*alpha)*a0"), "r>0: a0' = (1 - r alpha) a0");
  out.require(first(twod, ExponentCase::positive()) == E("a0' - a0"), "2d r>0: a0' = a0");

  auto relation = [&](const char* lead, ExponentCase c, const Frac& m, const Frac& forcing) {
    AnsatzSpec spec;
    spec.stage = AnsatzSpec::Stage::Relation;
    spec.series_var = "Y";
    spec.lead = lead;
    spec.coeff = "b";
    spec.exponent_case = c;
    spec.m = m;
    spec.forcing = forcing;
    return ansatz_constraints(classical, spec);
  };
  auto second = relation("k", ExponentCase::positive(), E("m"), Frac());
  out.require(!second.constraints.empty() && second.constraints[0].residual == E("X*b0_X + k*(X + alpha)*b0 - m*b0"),
              "second stage m b0 = x db0/dx + k (x + alpha) b0");
  Frac forcing = E("-beta*X*Y");
  auto c1 = relation("s", ExponentCase::between(0, 1), Frac(1), forcing);
  auto c2 = relation("s", ExponentCase::value(1), Frac(1), forcing);
  auto v1 = decide(constraint_to_ode(c1, 0, intern("b0")));
  auto v2 = decide(constraint_to_ode(c2, 0, intern("b0")));
  out.require(v1.kind == VerdictKind::NoAlgebraic, std::string("case 1 -> ") + to_string(v1.kind));
  out.require(v2.kind == VerdictKind::NoAlgebraic, std::string("case 2 -> ") + to_string(v2.kind));
  if (out.pass) out.detail << "r*a0^2, a0' = a0, a0' = (1 - r*alpha)*a0, 2d a0' = a0, second stage; cases 1, 2 NoAlgebraic";
}

void first_integral_check(Outcome& out) {
  SymbolTable ctx({"X", "Y"}, {"b", "d"});
  auto sym = lv_system(LvFamily::Classical, Frac(1), parse_ratfunc("b", ctx), Frac(1), parse_ratfunc("d", ctx),
                       {"b", "d"});
  LogLinearExpr H;
  H.rational = parse_ratfunc("X - Y", ctx);
  H.add_log(parse_ratfunc("d", ctx), parse_ratfunc("X", ctx));
  H.add_log(parse_ratfunc("-b", ctx), parse_ratfunc("Y", ctx));
  out.require(loglinear_derive(H, sym).is_zero(), "H not conserved for symbolic b, d");

  auto pairs = suites::random_first_integrals(61, 100);
  out.require(pairs.ok() && pairs.cases >= 100, "random pairs: " + pairs.first_failure);

  auto sys = PlanarSystem::make("X*(Y+1)", "Y*(X+d)", {"d"});
  auto tr = integrate(sys, {{"d", std::sqrt(2.0)}}, {0.5, 0.25}, 1.0, IntegrateOptions{kIntegrateRtol});
  double drift = conservation_drift(first_integral(sys), tr);
  out.require(drift <= kDriftTol, "drift " + fmt(drift));
  if (out.pass)
    out.detail << "symbolic check exact, " << pairs.cases << " rational pairs, drift " << fmt(drift) << " to t = "
               << tr.t.back() << " (" << to_string(tr.reason) << ")";
}

void probes(Outcome& out) {
  auto sys = PlanarSystem::make("X*(Y+1)", "Y*(X+d)", {"d"});
  ParamValues p{{"d", std::sqrt(2.0)}};
  auto t1 = integrate(sys, p, {0.5, 0.25}, 1.0);
  auto t2 = integrate(sys, p, {0.6, 0.3}, 1.0);
  auto ratio = ratio_probe(t1, t2);
  out.require(ratio.verdict == RatioVerdict::IndependentEvidence,
              std::string("ratio_probe ") + to_string(ratio.verdict));
  auto pair = relation_probe({t1, t2}, 2);
  out.require(pair.monomials.size() == 15, "expected 15 monomials");
  out.require(pair.ratio > kNoRelation, "pair relation ratio " + fmt(pair.ratio) + " not > " + fmt(kNoRelation));
  auto dup = relation_probe({t1, t1}, 2);
  out.require(dup.ratio < kPlanted, "duplicate control ratio " + fmt(dup.ratio));
  if (!out.pass) out.detail << "; ";
  out.detail << "ratio_probe " << to_string(ratio.verdict) << " (variation " << fmt(ratio.variation) << "), pair ratio "
             << fmt(pair.ratio) << ", duplicate " << fmt(dup.ratio);
}

void suite_line(Outcome& out, const char* name, const suites::Result& r, std::size_t n) {
  out.require(r.cases >= n && r.ok(), std::string(name) + ": " + r.first_failure);
  if (out.pass) out.detail << (out.detail.tellp() > 0 ? ", " : "") << name << " " << r.cases;
}

void oracles(Outcome& out) {
  suite_line(out, "kernel", suites::kernel_oracle(91, 200), 200);
  suite_line(out, "residue", suites::residue_oracle(101, 100), 100);
}

void properties(Outcome& out) {
  suite_line(out, "leibniz-tower", suites::leibniz_tower(11, 500), 500);
  suite_line(out, "leibniz-system", suites::leibniz_system(12, 500), 500);
  suite_line(out, "leibniz-darboux", suites::leibniz_darboux(13, 500), 500);
  suite_line(out, "leibniz-puiseux", suites::leibniz_puiseux(14, 500), 500);
  suite_line(out, "cofactor", suites::cofactor_additivity(21, 500), 500);
  suite_line(out, "pfrac", suites::partial_fraction_recomposition(31, 500), 500);
  suite_line(out, "parser", suites::parser_round_trip(41, 500), 500);
}

struct Criterion {
  const char* name;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{{"XY cofactor", xy_cofactor},
                                   {"bounded-degree non-existence", bounded_search},
                                   {"degenerate case", degenerate},
                                   {"algebraic-solution verdicts", verdicts},
                                   {"lemma equations", lemma_equations},
                                   {"first integral", first_integral_check},
                                   {"independence probes", probes},
                                   {"oracle equivalence", oracles},
                                   {"property suites", properties}};
  std::vector<std::size_t> pick;
  for (int i = 1; i < argc; ++i) {
    int k = std::atoi(argv[i]);
    if (k < 1 || k > static_cast<int>(all.size())) {
      std::fprintf(stderr, "unknown criterion %s\n", argv[i]);
      return 2;
    }
    pick.push_back(static_cast<std::size_t>(k));
  }
  if (pick.empty())
    for (std::size_t k = 1; k <= all.size(); ++k) pick.push_back(k);

  int failed = 0;
  for (std::size_t k : pick) {
    Outcome out;
    auto t0 = Clock::now();
    try {
      all[k - 1].run(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    double secs = since(t0);
    std::printf("%s %zu %s: %s [%.2f s]\n", out.pass ? "PASS" : "FAIL", k, all[k - 1].name, out.detail.str().c_str(),
                secs);
    std::fflush(stdout);
    failed += !out.pass;
  }
  std::printf("%zu criteria, %d failed\n", pick.size(), failed);
  return failed ? 1 : 0;
}
