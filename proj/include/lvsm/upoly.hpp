#pragma once

#include <utility>
#include <vector>

#include "lvsm/frac.hpp"

namespace lvsm {

// Dense univariate polynomial in `var` over the coefficient field (fractions
// free of `var`). Coefficient k multiplies var^k; no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(SymId var) : var_(var) {}
  UPoly(SymId var, std::vector<Frac> coeffs);
  static UPoly from_poly(const Poly& p, SymId var);
  // Throws std::invalid_argument if the denominator depends on var.
  static UPoly from_frac(const Frac& f, SymId var);
  static UPoly monomial(SymId var, std::size_t k, const Frac& c = Frac(1));

  SymId var() const { return var_; }
  const std::vector<Frac>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // degree of zero is reported as -1
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Frac& lc() const { return c_.back(); }
  Frac coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Frac(); }
  bool is_constant() const { return c_.size() <= 1; }
  // True when every coefficient is a rational number.
  bool has_rational_coefficients() const;

  Frac to_frac() const;
  Poly to_poly_cleared() const;  // var-polynomial times a nonzero field element

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly operator*(const Frac& c) const;
  UPoly operator-() const { return *this * Frac(-1); }
  UPoly pow(unsigned e) const;

  UPoly derivative() const;
  UPoly monic() const;
  Frac eval(const Frac& x) const;
  std::pair<UPoly, UPoly> divrem(const UPoly& b) const;
  UPoly mod(const UPoly& b) const { return divrem(b).second; }

  bool operator==(const UPoly& o) const { return c_ == o.c_; }
  bool operator!=(const UPoly& o) const { return !(*this == o); }

 private:
  void trim();
  SymId var_ = 0;
  std::vector<Frac> c_;
};

UPoly gcd(const UPoly& a, const UPoly& b);  // monic; zero if both zero
// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) monic.
struct ExtGcd {
  UPoly g, s, t;
};
ExtGcd ext_gcd(const UPoly& a, const UPoly& b);
// Inverse of a modulo m; throws std::domain_error if not invertible.
UPoly inverse_mod(const UPoly& a, const UPoly& m);

// Squarefree decomposition a = lc * prod f_k^k (Yun), factors monic and
// pairwise coprime; entries with constant factor are omitted.
std::vector<std::pair<UPoly, int>> squarefree(const UPoly& a);

}  // namespace lvsm
