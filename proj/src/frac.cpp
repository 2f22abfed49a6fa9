#include "lvsm/frac.hpp"

#include <stdexcept>

namespace lvsm {

Frac::Frac(const Poly& num, const Poly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  normalize();
}

void Frac::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (!den_.is_constant()) {
    Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *divide_exact(num_, g);
      den_ = *divide_exact(den_, g);
    }
  }
  Rational c = content(den_);
  if (den_.leading_coefficient() < 0) c = -c;
  if (c != 1) {
    Rational inv = Rational(1) / c;
    num_ *= inv;
    den_ *= inv;
  }
}

Rational Frac::constant_value() const {
  if (!is_constant()) throw std::logic_error("not a constant");
  return num_.constant_term() / den_.constant_term();
}

std::set<SymId> Frac::symbols() const {
  auto s = num_.symbols();
  auto d = den_.symbols();
  s.insert(d.begin(), d.end());
  return s;
}

Frac& Frac::operator+=(const Frac& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_constant()) normalize();
    else if (num_.is_zero()) den_ = Poly(1);
    return *this;
  }
  if (den_.is_constant() && o.den_.is_constant()) {
    // both denominators are 1 after normalization
    num_ += o.num_;
    return *this;
  }
  Poly g = gcd(den_, o.den_);
  Poly da = *divide_exact(den_, g);
  Poly db = *divide_exact(o.den_, g);
  num_ = num_ * db + o.num_ * da;
  den_ = da * o.den_;
  normalize();
  return *this;
}

Frac& Frac::operator-=(const Frac& o) { return *this += -o; }

Frac& Frac::operator*=(const Frac& o) {
  if (is_zero() || o.is_zero()) return *this = Frac();
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ *= o.num_;
    return *this;
  }
  // cross-cancel to keep intermediate sizes small
  Poly g1 = gcd(num_, o.den_);
  Poly g2 = gcd(o.num_, den_);
  Poly n = *divide_exact(num_, g1) * *divide_exact(o.num_, g2);
  Poly d = *divide_exact(den_, g2) * *divide_exact(o.den_, g1);
  num_ = std::move(n);
  den_ = std::move(d);
  Rational c = content(den_);
  if (den_.leading_coefficient() < 0) c = -c;
  if (c != 1) {
    num_ *= Rational(1) / c;
    den_ *= Rational(1) / c;
  }
  return *this;
}

Frac& Frac::operator/=(const Frac& o) { return *this *= o.inverse(); }

Frac Frac::operator-() const { return Frac(-num_, den_, Reduced{}); }

Frac Frac::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Frac r(den_, num_, Reduced{});
  Rational c = content(r.den_);
  if (r.den_.leading_coefficient() < 0) c = -c;
  if (c != 1) {
    r.num_ *= Rational(1) / c;
    r.den_ *= Rational(1) / c;
  }
  return r;
}

Frac Frac::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  return Frac(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), Reduced{});
}

Frac Frac::derivative(SymId v) const {
  if (den_.is_constant()) return Frac(num_.derivative(v), den_, Reduced{});
  return Frac(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

Frac substitute(const Poly& p, SymId v, const Frac& e) {
  if (!p.has(v)) return Frac(p);
  auto cs = p.coefficients(v);
  Frac acc(cs.back());
  for (std::size_t k = cs.size() - 1; k-- > 0;) acc = acc * e + Frac(cs[k]);
  return acc;
}

Frac Frac::substitute(SymId v, const Frac& e) const {
  if (!has(v)) return *this;
  if (e.is_polynomial()) {
    Poly ep = e.num();
    ep *= Rational(1) / e.den().constant_term();
    return Frac(num_.substitute(v, ep), den_.substitute(v, ep));
  }
  return lvsm::substitute(num_, v, e) / lvsm::substitute(den_, v, e);
}

}  // namespace lvsm
