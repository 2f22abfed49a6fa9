#include "lvsm/puiseux.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <sstream>

namespace lvsm {

namespace {

int sgn(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

Rational parse_rational(const std::string& s) {
  Rational q(s);
  q.canonicalize();
  return q;
}

}  // namespace

Frac Exponent::as_frac(SymId r) const { return Frac(lead) * Frac::symbol(r) + Frac(shift); }

std::string Exponent::to_string(const std::string& r) const {
  std::string out;
  if (lead != 0) {
    if (lead == -1) out = "-";
    else if (lead != 1) out = format_rational(lead) + "*";
    out += r;
  }
  if (shift != 0 || out.empty()) {
    if (out.empty()) return format_rational(shift);
    out += shift > 0 ? " + " : " - ";
    out += format_rational(shift > 0 ? shift : Rational(-shift));
  }
  return out;
}

ExponentCase ExponentCase::parse(const std::string& text, const std::string& r) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  const std::string num = "(-?[0-9]+(?:/[0-9]+)?)";
  const std::string id = "([A-Za-z_][A-Za-z0-9_]*)";
  std::smatch m;
  auto check = [&](const std::string& name) {
    if (name != r) throw std::invalid_argument("case must constrain '" + r + "', got '" + name + "'");
  };
  if (std::regex_match(s, m, std::regex(id + "(<|>|=)" + num))) {
    check(m[1]);
    Rational v = parse_rational(m[3]);
    if (m[2] == "=") return value(v);
    ExponentCase c;
    (m[2] == "<" ? c.hi : c.lo) = v;
    return c;
  }
  if (std::regex_match(s, m, std::regex(num + "<" + id + "<" + num))) {
    check(m[2]);
    Rational l = parse_rational(m[1]), h = parse_rational(m[3]);
    if (!(l < h)) throw std::invalid_argument("empty interval in case '" + text + "'");
    return between(l, h);
  }
  throw std::invalid_argument("cannot parse case '" + text + "' (expected e.g. " + r + "<0, " + r + "=0, 0<" + r +
                              "<1)");
}

std::optional<int> ExponentCase::sign(const Exponent& d) const {
  if (exact) return sgn(d.lead * *exact + d.shift);
  if (d.lead == 0) return sgn(d.shift);
  Rational root = -d.shift / d.lead;
  bool outside = (lo && root <= *lo) || (hi && root >= *hi);
  if (!outside) return std::nullopt;
  Rational sample;
  if (lo && hi) sample = (*lo + *hi) / 2;
  else if (lo) sample = *lo + 1;
  else sample = *hi - 1;
  return sgn(d.lead * sample + d.shift);
}

std::string ExponentCase::describe(const std::string& r) const {
  if (exact) return r + " = " + format_rational(*exact);
  if (lo && hi) return format_rational(*lo) + " < " + r + " < " + format_rational(*hi);
  if (lo) return r + " > " + format_rational(*lo);
  if (hi) return r + " < " + format_rational(*hi);
  return r + " arbitrary";
}

// ---------------------------------------------------------------------------

Exponent PuiseuxSeries::normalize(const Exponent& e) const {
  if (case_.exact) return Exponent::constant(e.lead * *case_.exact + e.shift);
  return e;
}

PuiseuxSeries PuiseuxSeries::ansatz(SymId y, SymId lead, const ExponentCase& c, const std::string& name, unsigned e,
                                    unsigned n) {
  if (e == 0) throw std::invalid_argument("ramification index must be positive");
  if (n == 0) throw std::invalid_argument("ansatz needs at least one term");
  PuiseuxSeries s(y, lead, c);
  for (unsigned i = 0; i < n; ++i)
    s.add_term(Exponent(1, Rational(i, e)), Frac::symbol(intern(name + std::to_string(i))));
  s.add_tail(Exponent(1, Rational(n, e)));
  return s;
}

PuiseuxSeries PuiseuxSeries::polynomial(SymId y, SymId lead, const ExponentCase& c, const Frac& p) {
  if (!p.den().free_of({y})) throw std::invalid_argument("not a polynomial in " + symbol_name(y));
  PuiseuxSeries s(y, lead, c);
  Frac inv_den = Frac(Poly(1), p.den());
  auto cs = p.num().coefficients(y);
  for (std::size_t k = 0; k < cs.size(); ++k)
    if (!cs[k].is_zero()) s.add_term(Exponent::constant(Rational(static_cast<long>(k))), Frac(cs[k]) * inv_den);
  return s;
}

unsigned PuiseuxSeries::ramification() const {
  mpz_class l = 1;
  auto fold = [&](const Exponent& e) {
    mpz_class a = e.lead.get_den(), b = e.shift.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), b.get_mpz_t());
  };
  for (const auto& [e, c] : terms_) fold(e);
  for (const auto& t : tails_) fold(t);
  return static_cast<unsigned>(l.get_ui());
}

Frac PuiseuxSeries::coefficient(const Exponent& e) const {
  auto it = terms_.find(normalize(e));
  return it == terms_.end() ? Frac() : it->second;
}

void PuiseuxSeries::add_term(const Exponent& e, const Frac& c) {
  if (c.is_zero()) return;
  Exponent k = normalize(e);
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void PuiseuxSeries::add_tail(const Exponent& t) {
  tails_.push_back(normalize(t));
  prune();
}

void PuiseuxSeries::prune() {
  std::sort(tails_.begin(), tails_.end());
  tails_.erase(std::unique(tails_.begin(), tails_.end()), tails_.end());
  std::vector<Exponent> kept;
  for (std::size_t i = 0; i < tails_.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < tails_.size() && !dominated; ++j) {
      if (i == j) continue;
      auto s = case_.sign(tails_[i] - tails_[j]);
      dominated = s && *s >= 0;
    }
    if (!dominated) kept.push_back(tails_[i]);
  }
  tails_ = std::move(kept);
  // terms at or beyond a tail carry incomplete coefficients
  for (auto it = terms_.begin(); it != terms_.end();) {
    bool beyond = std::any_of(tails_.begin(), tails_.end(), [&](const Exponent& t) {
      auto s = case_.sign(it->first - t);
      return s && *s >= 0;
    });
    it = beyond ? terms_.erase(it) : std::next(it);
  }
}

PuiseuxSeries PuiseuxSeries::operator+(const PuiseuxSeries& o) const {
  PuiseuxSeries out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  out.tails_.insert(out.tails_.end(), o.tails_.begin(), o.tails_.end());
  out.prune();
  return out;
}

PuiseuxSeries PuiseuxSeries::operator-(const PuiseuxSeries& o) const { return *this + o * Frac(-1); }

PuiseuxSeries PuiseuxSeries::operator*(const Frac& c) const {
  PuiseuxSeries out(y_, lead_, case_);
  if (c.is_zero()) return out;
  for (const auto& [e, v] : terms_) out.add_term(e, v * c);
  out.tails_ = tails_;
  return out;
}

PuiseuxSeries PuiseuxSeries::operator*(const PuiseuxSeries& o) const {
  PuiseuxSeries out(y_, lead_, case_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) out.add_term(e1 + e2, c1 * c2);
  for (const auto& t : tails_) {
    for (const auto& [e, c] : o.terms_) out.tails_.push_back(t + e);
    for (const auto& t2 : o.tails_) out.tails_.push_back(t + t2);
  }
  for (const auto& t : o.tails_)
    for (const auto& [e, c] : terms_) out.tails_.push_back(t + e);
  out.prune();
  return out;
}

PuiseuxSeries PuiseuxSeries::shifted(const Exponent& by) const {
  PuiseuxSeries out(y_, lead_, case_);
  for (const auto& [e, c] : terms_) out.add_term(e + by, c);
  for (const auto& t : tails_) out.tails_.push_back(normalize(t + by));
  out.prune();
  return out;
}

PuiseuxSeries PuiseuxSeries::map_coefficients(const std::function<Frac(const Frac&)>& fn) const {
  PuiseuxSeries out(y_, lead_, case_);
  for (const auto& [e, c] : terms_) out.add_term(e, fn(c));
  out.tails_ = tails_;
  return out;
}

std::optional<Exponent> PuiseuxSeries::minimum(const std::vector<Exponent>& es) const {
  for (const auto& cand : es) {
    bool ok = std::all_of(es.begin(), es.end(), [&](const Exponent& o) {
      auto s = case_.sign(o - cand);
      return s && *s >= 0;
    });
    if (ok) return cand;
  }
  return std::nullopt;
}

std::string PuiseuxSeries::to_string(const VarOrder& order) const {
  const std::string& y = symbol_name(y_);
  const std::string& r = symbol_name(lead_);
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + format_frac(c, order) + ")*" + y + "^(" + e.to_string(r) + ")";
  }
  if (!tails_.empty()) {
    if (!out.empty()) out += " + ";
    out += "O(";
    for (std::size_t i = 0; i < tails_.size(); ++i)
      out += (i ? ", " : "") + y + "^(" + tails_[i].to_string(r) + ")";
    out += ")";
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

SymId partial_symbol(SymId coef, SymId x) { return intern(symbol_name(coef) + "_" + symbol_name(x)); }

CoefficientDerivation formal_derivation(const DiffTower& tower, SymId y, SymId lead, const ExponentCase& c) {
  CoefficientDerivation d;
  d.lowest = Exponent::constant(0);
  d.derive = [tower, y, lead, c](const Frac& v) {
    PuiseuxSeries s(y, lead, c);
    s.add_term(Exponent::constant(0), tower.derive(v));
    return s;
  };
  return d;
}

CoefficientDerivation field_derivation(SymId x, const Frac& xprime, const std::set<SymId>& formal, SymId y,
                                       SymId lead, const ExponentCase& c) {
  PuiseuxSeries xp = PuiseuxSeries::polynomial(y, lead, c, xprime);
  CoefficientDerivation d;
  std::vector<Exponent> es;
  for (const auto& [e, v] : xp.terms()) es.push_back(e);
  d.lowest = es.empty() ? Exponent::constant(0) : *xp.minimum(es);
  d.derive = [xp, x, formal](const Frac& v) {
    Frac dx;
    for (SymId s : v.symbols()) {
      if (s == x) dx += v.derivative(s);
      else if (formal.count(s)) dx += v.derivative(s) * Frac::symbol(partial_symbol(s, x));
    }
    return xp * dx;
  };
  return d;
}

PuiseuxSeries derive_under(const PuiseuxSeries& s, const CoefficientDerivation& d, const PuiseuxSeries& yprime) {
  PuiseuxSeries coef(s.var(), s.lead_symbol(), s.exponent_case());
  PuiseuxSeries dy(s.var(), s.lead_symbol(), s.exponent_case());
  Exponent one = Exponent::constant(1);
  for (const auto& [e, c] : s.terms()) {
    coef = coef + d.derive(c).shifted(e);
    dy.add_term(e - one, c * e.as_frac(s.lead_symbol()));
  }
  for (const auto& t : s.tails()) {
    coef.add_tail(t + d.lowest);
    dy.add_tail(t - one);
  }
  return coef + dy * yprime;
}

// ---------------------------------------------------------------------------

namespace {

PuiseuxSeries power(const PuiseuxSeries& s, std::uint32_t k, const PuiseuxSeries& one) {
  PuiseuxSeries out = one;
  for (std::uint32_t i = 0; i < k; ++i) out = out * s;
  return out;
}

// Substitutes series for the variables of p.
PuiseuxSeries evaluate(const MPoly& p, const std::map<SymId, PuiseuxSeries>& at, const PuiseuxSeries& one) {
  PuiseuxSeries out = one * Frac(0);
  for (const auto& [m, c] : p.terms()) {
    PuiseuxSeries t = one * c;
    for (const auto& [v, e] : m.factors()) t = t * power(at.at(v), e, one);
    out = out + t;
  }
  return out;
}

void normalize_constraint(Constraint& c, const std::set<SymId>& derivative_syms, const VarOrder& order) {
  const Poly& n = c.residual.num();
  SymId best = 0;
  int best_rank = -1;
  for (SymId s : n.symbols()) {
    int rank = derivative_syms.count(s) ? 100 : prime_count(s);
    if (rank > 0 && rank > best_rank && n.degree(s) == 1) {
      best = s;
      best_rank = rank;
    }
  }
  if (best_rank > 0) {
    auto cs = n.coefficients(best);
    if (cs[1].free_of({best})) {
      c.lhs = Frac::symbol(best);
      c.rhs = Frac(-cs[0]) / Frac(cs[1]);
      c.text = format_frac(c.lhs, order) + " = " + format_frac(c.rhs, order);
      return;
    }
  }
  c.lhs = c.residual;
  c.rhs = Frac();
  c.text = format_frac(c.lhs, order) + " = 0";
}

}  // namespace

ConstraintSet ansatz_constraints(const PlanarSystem& sys, const AnsatzSpec& spec) {
  auto var_id = [&](const std::string& name) {
    for (SymId v : sys.vars)
      if (symbol_name(v) == name) return v;
    throw std::invalid_argument("'" + name + "' is not a variable of the system");
  };
  SymId y = var_id(spec.series_var.empty() ? symbol_name(sys.vars[1]) : spec.series_var);
  SymId other = sys.vars[0] == y ? sys.vars[1] : sys.vars[0];
  SymId lead = intern(spec.lead);
  if (sys.tower.declares(lead) || lead == other || lead == y)
    throw std::invalid_argument("lead exponent symbol '" + spec.lead + "' clashes with the system");
  if (spec.depth == 0) throw std::invalid_argument("depth must be at least 1");
  const ExponentCase& ec = spec.exponent_case;

  ConstraintSet cs;
  cs.series_var = y;
  cs.lead = lead;
  cs.exponent_case = ec;
  PuiseuxSeries series = PuiseuxSeries::ansatz(y, lead, ec, spec.coeff, spec.ramification, spec.terms);
  for (unsigned i = 0; i < spec.terms; ++i) {
    SymId a = intern(spec.coeff + std::to_string(i));
    if (sys.tower.declares(a) || a == other || a == y)
      throw std::invalid_argument("coefficient name '" + symbol_name(a) + "' clashes with the system");
    cs.coefficients.push_back(a);
  }
  PuiseuxSeries one(y, lead, ec);
  one.add_term(Exponent::constant(0), Frac(1));
  PuiseuxSeries yser(y, lead, ec);
  yser.add_term(Exponent::constant(1), Frac(1));

  cs.assumptions.push_back(ec.describe(spec.lead));
  cs.assumptions.push_back(symbol_name(cs.coefficients[0]) + " != 0");
  cs.assumptions.push_back("ramification index " + std::to_string(spec.ramification));
  cs.assumptions.push_back("ansatz truncated after " + std::to_string(spec.terms) + " terms");

  std::set<SymId> derivative_syms;
  PuiseuxSeries residual;
  if (spec.stage == AnsatzSpec::Stage::Expand) {
    SymId x = spec.expanded.empty() ? other : var_id(spec.expanded);
    if (x == y) throw std::invalid_argument("cannot expand the series variable in itself");
    DiffTower tower = sys.tower;
    tower.add_parameter(lead);
    for (SymId a : cs.coefficients) tower.add_indeterminate(a);
    std::map<SymId, PuiseuxSeries> at{{x, series}, {y, yser}};
    PuiseuxSeries yprime = evaluate(sys.field(y), at, one);
    PuiseuxSeries xfield = evaluate(sys.field(x), at, one);
    residual = derive_under(series, formal_derivation(tower, y, lead, ec), yprime) - xfield;
    cs.assumptions.push_back(symbol_name(x) + " = sum " + spec.coeff + "_i " + symbol_name(y) + "^(" + spec.lead +
                             " + i/e), coefficients constant over the base field");
  } else {
    SymId x = other;
    cs.coefficient_var = x;
    std::set<SymId> formal(cs.coefficients.begin(), cs.coefficients.end());
    for (SymId b : cs.coefficients) derivative_syms.insert(partial_symbol(b, x));
    // m may involve further constants (e.g. 1 - r*alpha from an earlier stage)
    if (spec.m.has(y) || !spec.m.free_of(formal)) throw std::invalid_argument("m must be free of the series");
    if (!spec.forcing.free_of(formal)) throw std::invalid_argument("forcing must be free of the ansatz coefficients");
    PuiseuxSeries yprime = PuiseuxSeries::polynomial(y, lead, ec, sys.field(y).to_frac());
    auto d = field_derivation(x, sys.field(x).to_frac(), formal, y, lead, ec);
    PuiseuxSeries forcing = PuiseuxSeries::polynomial(y, lead, ec, spec.forcing);
    residual = derive_under(series, d, yprime) - series * spec.m - forcing;
    std::string rel = "a' = " + format_frac(spec.m, sys.order()) + "*a";
    if (!spec.forcing.is_zero()) rel += " + " + format_frac(spec.forcing, sys.order());
    cs.assumptions.push_back(rel + ", a = sum " + spec.coeff + "_i " + symbol_name(y) + "^(" + spec.lead +
                             " + i/e), " + spec.coeff + "_i in the field of " + symbol_name(x));
  }
  cs.residual = residual;

  std::vector<Exponent> remaining;
  for (const auto& [e, c] : residual.terms()) remaining.push_back(e);
  const auto& tails = residual.tails();
  VarOrder order = sys.order();
  while (cs.constraints.size() < spec.depth) {
    if (remaining.empty()) {
      cs.stop_reason = tails.empty() ? "residual vanishes identically" : "no further terms below the truncation";
      break;
    }
    std::optional<Exponent> next;
    bool below_tails = false;
    for (const auto& cand : remaining) {
      bool lowest = std::all_of(remaining.begin(), remaining.end(), [&](const Exponent& o) {
        if (o == cand) return true;
        auto s = ec.sign(o - cand);
        return s && *s > 0;
      });
      if (!lowest) continue;
      next = cand;
      below_tails = std::all_of(tails.begin(), tails.end(), [&](const Exponent& t) {
        auto s = ec.sign(t - cand);
        return s && *s > 0;
      });
      break;
    }
    if (!next) {
      cs.stop_reason = "order of the remaining exponents depends on " + spec.lead + " within " + ec.describe(spec.lead);
      break;
    }
    if (!below_tails) {
      cs.stop_reason = "coefficient at " + symbol_name(y) + "^(" + next->to_string(spec.lead) +
                       ") needs more ansatz terms";
      break;
    }
    Constraint c;
    c.exponent = *next;
    c.exponent_text = next->to_string(spec.lead);
    c.residual = residual.coefficient(*next);
    normalize_constraint(c, derivative_syms, order);
    cs.constraints.push_back(std::move(c));
    remaining.erase(std::find(remaining.begin(), remaining.end(), *next));
  }
  if (cs.stop_reason.empty()) cs.stop_reason = "depth reached";
  cs.determined = cs.constraints.size();
  return cs;
}

LinearOdeProblem constraint_to_ode(const ConstraintSet& cs, std::size_t index, SymId coefficient) {
  if (!cs.coefficient_var) throw std::invalid_argument("constraint_to_ode needs a relation-stage constraint set");
  if (index >= cs.constraints.size()) throw std::out_of_range("no constraint with that index");
  SymId x = *cs.coefficient_var;
  SymId bx = partial_symbol(coefficient, x);
  const Frac& res = cs.constraints[index].residual;
  if (res.den().has(coefficient) || res.den().has(bx)) throw NotLinear("constraint is not linear in the coefficient");
  const Poly& n = res.num();
  std::set<SymId> unknowns;
  for (SymId b : cs.coefficients) {
    unknowns.insert(b);
    unknowns.insert(partial_symbol(b, x));
  }
  auto cx = n.coefficients(bx);
  if (cx.size() != 2) throw NotLinear("constraint does not involve d" + symbol_name(coefficient) + "/d" + symbol_name(x) + " linearly");
  auto cb = cx[0].coefficients(coefficient);
  if (cb.size() > 2) throw NotLinear("constraint is not linear in " + symbol_name(coefficient));
  Poly P = cx[1], Q = cb.size() > 1 ? cb[1] : Poly(), R = cb.empty() ? Poly() : cb[0];
  for (const Poly* p : {&P, &Q, &R})
    if (!p->free_of(unknowns)) throw NotLinear("constraint couples several ansatz coefficients");
  LinearOdeProblem out;
  out.var = x;
  out.F = Frac(-Q) / Frac(P);
  out.c = Frac(-R) / Frac(P);
  return out;
}

AlgSolVerdict decide(const LinearOdeProblem& p) {
  if (p.c.is_zero()) return algebraic_solution_test(p.F, p.var);
  AlgSolVerdict undecided;
  undecided.kind = VerdictKind::Undecided;
  undecided.reason = "inhomogeneous equation outside the v' = (q/t + c1) v + c2 family";
  if (p.c.has(p.var)) return undecided;
  auto pf = partial_fractions(p.F, p.var);
  if (!pf.polynomial_part.is_constant()) return undecided;
  Frac c1 = pf.polynomial_part.coeff(0);
  Frac q;
  if (pf.terms.size() > 1) return undecided;
  if (pf.terms.size() == 1) {
    const auto& t = pf.terms[0];
    if (t.multiplicity != 1 || t.factor != UPoly::monomial(p.var, 1)) return undecided;
    q = t.numerators[0].coeff(0);
  }
  auto family = (q == Frac(1) && c1 == Frac(-1)) ? LemmaFamily::TwoD : LemmaFamily::Classical;
  return lemma_family_check(q, c1, p.c, family, p.var);
}

}  // namespace lvsm
