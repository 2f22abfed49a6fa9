#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lvsm/diffstruct.hpp"
#include "lvsm/lode.hpp"

namespace lvsm {

// lead * r + shift, r being the symbolic leading exponent of an ansatz.
struct Exponent {
  Rational lead;
  Rational shift;

  Exponent() = default;
  Exponent(Rational l, Rational s) : lead(std::move(l)), shift(std::move(s)) {}
  static Exponent constant(const Rational& s) { return {Rational(0), s}; }

  Exponent operator+(const Exponent& o) const { return {lead + o.lead, shift + o.shift}; }
  Exponent operator-(const Exponent& o) const { return {lead - o.lead, shift - o.shift}; }
  bool operator==(const Exponent& o) const { return lead == o.lead && shift == o.shift; }
  bool operator<(const Exponent& o) const {  // structural, for storage only
    return lead != o.lead ? lead < o.lead : shift < o.shift;
  }
  // The exponent as a rational function of the lead symbol.
  Frac as_frac(SymId r) const;
  std::string to_string(const std::string& r) const;
};

// Standing assumption on the leading exponent: an exact value or an open
// interval (lo, hi) with optional endpoints.
struct ExponentCase {
  std::optional<Rational> exact;
  std::optional<Rational> lo, hi;

  static ExponentCase negative() { return {std::nullopt, std::nullopt, Rational(0)}; }
  static ExponentCase zero() { return {Rational(0), std::nullopt, std::nullopt}; }
  static ExponentCase positive() { return {std::nullopt, Rational(0), std::nullopt}; }
  static ExponentCase value(const Rational& v) { return {v, std::nullopt, std::nullopt}; }
  static ExponentCase between(const Rational& l, const Rational& h) { return {std::nullopt, l, h}; }
  // "r<0", "r=0", "r>0", "r=1", "0<r<1" (the symbol name is checked)
  static ExponentCase parse(const std::string& text, const std::string& r);

  // Sign of d over the whole case, or nullopt when it varies.
  std::optional<int> sign(const Exponent& d) const;
  std::string describe(const std::string& r) const;
};

class PuiseuxSeries {
 public:
  PuiseuxSeries() = default;
  PuiseuxSeries(SymId y, SymId lead, ExponentCase c) : y_(y), lead_(lead), case_(std::move(c)) {}

  // sum_{i < n} name_i y^(r + i/e), unknown from y^(r + n/e) on.
  static PuiseuxSeries ansatz(SymId y, SymId lead, const ExponentCase& c, const std::string& name, unsigned e,
                              unsigned n);
  // Exact polynomial in y (no truncation) with coefficients free of y.
  static PuiseuxSeries polynomial(SymId y, SymId lead, const ExponentCase& c, const Frac& p);

  SymId var() const { return y_; }
  SymId lead_symbol() const { return lead_; }
  const ExponentCase& exponent_case() const { return case_; }
  const std::map<Exponent, Frac>& terms() const { return terms_; }
  const std::vector<Exponent>& tails() const { return tails_; }
  unsigned ramification() const;
  bool exact() const { return tails_.empty(); }

  Frac coefficient(const Exponent& e) const;
  void add_term(const Exponent& e, const Frac& c);
  void add_tail(const Exponent& t);

  PuiseuxSeries operator+(const PuiseuxSeries& o) const;
  PuiseuxSeries operator-(const PuiseuxSeries& o) const;
  PuiseuxSeries operator*(const PuiseuxSeries& o) const;
  PuiseuxSeries operator*(const Frac& c) const;
  PuiseuxSeries shifted(const Exponent& by) const;  // times y^by
  PuiseuxSeries map_coefficients(const std::function<Frac(const Frac&)>& fn) const;

  // Provable minimum among the given exponents, if any.
  std::optional<Exponent> minimum(const std::vector<Exponent>& es) const;
  std::string to_string(const VarOrder& order = {}) const;

 private:
  Exponent normalize(const Exponent& e) const;
  void prune();

  SymId y_ = 0;
  SymId lead_ = 0;
  ExponentCase case_;
  std::map<Exponent, Frac> terms_;
  std::vector<Exponent> tails_;
};

// How coefficients are differentiated.
struct CoefficientDerivation {
  // Maps a coefficient c to the series of its derivative.
  std::function<PuiseuxSeries(const Frac&)> derive;
  // Lowest y-exponent that derive() can introduce (for tail bookkeeping).
  Exponent lowest;
};

// Formal coefficients: a_i -> a_i', parameters and the lead symbol constant.
CoefficientDerivation formal_derivation(const DiffTower& tower, SymId y, SymId lead, const ExponentCase& c);
// Coefficients in Q(params)(x): c -> x' * dc/dx, with x' a polynomial in x, y
// and each formal coefficient b_i depending on x through the symbol b_i_x.
CoefficientDerivation field_derivation(SymId x, const Frac& xprime, const std::set<SymId>& formal, SymId y, SymId lead,
                                       const ExponentCase& c);

// Term-by-term derivative: sum c' y^E + sum c E y^(E-1) y'.
PuiseuxSeries derive_under(const PuiseuxSeries& s, const CoefficientDerivation& d, const PuiseuxSeries& yprime);

// Name of the symbol standing for d(coef)/dx.
SymId partial_symbol(SymId coef, SymId x);

struct AnsatzSpec {
  enum class Stage {
    Expand,   // expand one system variable in powers of the other
    Relation  // expand an auxiliary a with a' = m a + forcing, coefficients in Q(params)(x)
  };
  Stage stage = Stage::Expand;
  std::string expanded;       // Expand: the variable written as a series
  std::string series_var;     // the variable whose powers are used
  std::string lead = "r";
  std::string coeff = "a";
  ExponentCase exponent_case = ExponentCase::positive();
  unsigned ramification = 1;
  unsigned terms = 8;
  unsigned depth = 1;
  Frac m;        // Relation
  Frac forcing;  // Relation: polynomial in the system variables
};

struct Constraint {
  Exponent exponent;
  std::string exponent_text;
  Frac residual;   // coefficient of y^exponent in (derivative side - field side)
  Frac lhs, rhs;   // normalized equation lhs = rhs
  std::string text;
};

struct ConstraintSet {
  SymId series_var = 0;
  SymId lead = 0;
  ExponentCase exponent_case;
  std::vector<SymId> coefficients;  // formal coefficients of the ansatz
  std::optional<SymId> coefficient_var;  // x in the Relation stage
  std::vector<Constraint> constraints;
  std::vector<std::string> assumptions;
  std::size_t determined = 0;
  std::string stop_reason;
  PuiseuxSeries residual;
};

ConstraintSet ansatz_constraints(const PlanarSystem& sys, const AnsatzSpec& spec);

class NotLinear : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// From a Relation-stage constraint P*b_x + Q*b + R = 0 extracts
// db/dx = F b + c in the variable x.
LinearOdeProblem constraint_to_ode(const ConstraintSet& cs, std::size_t index, SymId coefficient);

// algebraic_solution_test for homogeneous problems, the lemma families for
// v' = (q/t + c1) v + c2, otherwise Undecided.
AlgSolVerdict decide(const LinearOdeProblem& p);

}  // namespace lvsm
