#pragma once

#include <set>
#include <string>

#include "lvsm/poly.hpp"

namespace lvsm {

// Reduced fraction of polynomials over Q. The denominator is integral,
// primitive and has positive leading coefficient; with gcd(num, den) = 1 this
// makes the representation canonical, so equality is structural.
//
// A Frac free of dynamical variables plays the role of a scalar of the
// coefficient field Q(params); a Frac in a tower generator t is a rational
// function of t over that field.
class Frac {
 public:
  Frac() : den_(1) {}
  Frac(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  Frac(long c) : num_(c), den_(1) {}             // NOLINT(google-explicit-constructor)
  Frac(const Poly& p) : num_(p), den_(1) {}      // NOLINT(google-explicit-constructor)
  Frac(const Poly& num, const Poly& den);
  static Frac symbol(SymId v) { return Frac(Poly::symbol(v)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_ == Poly(1) && num_ == Poly(1); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  // Precondition: is_constant().
  Rational constant_value() const;

  std::set<SymId> symbols() const;
  bool has(SymId v) const { return num_.has(v) || den_.has(v); }
  bool free_of(const std::set<SymId>& vs) const { return num_.free_of(vs) && den_.free_of(vs); }

  Frac& operator+=(const Frac& o);
  Frac& operator-=(const Frac& o);
  Frac& operator*=(const Frac& o);
  Frac& operator/=(const Frac& o);
  friend Frac operator+(Frac a, const Frac& b) { return a += b; }
  friend Frac operator-(Frac a, const Frac& b) { return a -= b; }
  friend Frac operator*(Frac a, const Frac& b) { return a *= b; }
  friend Frac operator/(Frac a, const Frac& b) { return a /= b; }
  Frac operator-() const;
  Frac inverse() const;
  Frac pow(int e) const;

  Frac derivative(SymId v) const;
  Frac substitute(SymId v, const Frac& e) const;

  bool operator==(const Frac& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Frac& o) const { return !(*this == o); }

 private:
  struct Reduced {};
  Frac(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  Poly num_;
  Poly den_;
};

// Substitutes v := e into a polynomial, with e a fraction.
Frac substitute(const Poly& p, SymId v, const Frac& e);

}  // namespace lvsm
