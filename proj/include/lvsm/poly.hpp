#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lvsm/monomial.hpp"
#include "lvsm/rational.hpp"

namespace lvsm {

// Sparse multivariate polynomial over the rationals in interned symbols.
// No zero coefficients are stored.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, GradedLex>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c);             // NOLINT(google-explicit-constructor)
  static Poly symbol(SymId v);
  static Poly term(const Monomial& m, const Rational& c);

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  // Leading term under GradedLex; precondition: nonzero.
  const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
  const Rational& leading_coefficient() const { return terms_.rbegin()->second; }
  Rational coefficient(const Monomial& m) const;

  std::uint32_t degree() const;
  std::uint32_t degree(SymId v) const;
  std::set<SymId> symbols() const;
  bool has(SymId v) const;
  bool free_of(const std::set<SymId>& vs) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly pow(unsigned e) const;
  Poly mul_monomial(const Monomial& m, const Rational& c) const;

  Poly derivative(SymId v) const;
  // coefficients()[k] is the coefficient of v^k, a polynomial free of v.
  std::vector<Poly> coefficients(SymId v) const;
  static Poly from_coefficients(SymId v, const std::vector<Poly>& cs);
  Poly substitute(SymId v, const Poly& e) const;

  template <class T>
  T eval(const std::function<T(SymId)>& value) const;

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  void add_term(const Monomial& m, const Rational& c);

 private:
  Terms terms_;
};

// Exact quotient a / b when b divides a in Q[symbols].
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

// Positive rational c with p = c * q, q integral primitive; zero for p = 0.
Rational content(const Poly& p);
// Integral primitive associate of p with positive leading coefficient.
Poly primitive_part(const Poly& p);
// Normalized gcd in Q[symbols] (integral primitive, positive leading coefficient).
Poly gcd(const Poly& a, const Poly& b);

template <class T>
T Poly::eval(const std::function<T(SymId)>& value) const {
  T acc = T(0);
  for (const auto& [m, c] : terms_) {
    T t = T(c.get_d());
    for (const auto& [s, e] : m.factors()) {
      T v = value(s);
      for (std::uint32_t k = 0; k < e; ++k) t *= v;
    }
    acc += t;
  }
  return acc;
}

}  // namespace lvsm
