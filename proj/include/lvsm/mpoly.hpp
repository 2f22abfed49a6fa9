#pragma once

#include <map>
#include <utility>
#include <vector>

#include "lvsm/frac.hpp"

namespace lvsm {

// Polynomial in a fixed list of main variables (X, Y, ...) whose
// coefficients are fractions free of those variables, i.e. elements of the
// coefficient field Q(params, tower generators).
class MPoly {
 public:
  using Terms = std::map<Monomial, Frac, GradedLex>;

  MPoly() = default;
  explicit MPoly(std::vector<SymId> vars) : vars_(std::move(vars)) {}
  MPoly(std::vector<SymId> vars, const Frac& c);
  // Splits f into main-variable monomials; throws std::invalid_argument if
  // the denominator of f involves a main variable.
  static MPoly from_frac(const Frac& f, const std::vector<SymId>& vars);
  static MPoly from_poly(const Poly& p, const std::vector<SymId>& vars);
  static MPoly var(const std::vector<SymId>& vars, SymId v);

  const std::vector<SymId>& vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // True when the polynomial has degree 0 in the main variables.
  bool is_constant() const;
  std::uint32_t degree() const;
  std::uint32_t degree(SymId v) const;
  Frac coefficient(const Monomial& m) const;

  // Terms in printing order: graded lex with the main variables in
  // declaration order.
  std::vector<std::pair<Monomial, Frac>> sorted_terms() const;
  std::pair<Monomial, Frac> leading_term() const;
  MPoly monic() const;

  Frac to_frac() const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly operator*(const Frac& c) const;
  MPoly operator-() const;
  MPoly partial(SymId v) const;

  // Multivariate division by b under the printing order; returns
  // (quotient, remainder) with no remainder term divisible by lt(b).
  std::pair<MPoly, MPoly> divrem(const MPoly& b) const;

  bool operator==(const MPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  void add_term(const Monomial& m, const Frac& c);

 private:
  std::vector<SymId> vars_;
  Terms terms_;
};

}  // namespace lvsm
