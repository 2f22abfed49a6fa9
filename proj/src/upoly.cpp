#include "lvsm/upoly.hpp"

#include <stdexcept>

namespace lvsm {

UPoly::UPoly(SymId var, std::vector<Frac> coeffs) : var_(var), c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::from_poly(const Poly& p, SymId var) {
  auto cs = p.coefficients(var);
  std::vector<Frac> fs;
  fs.reserve(cs.size());
  for (auto& c : cs) fs.emplace_back(c);
  return UPoly(var, std::move(fs));
}

UPoly UPoly::from_frac(const Frac& f, SymId var) {
  if (f.den().has(var)) throw std::invalid_argument("not a polynomial in " + symbol_name(var));
  UPoly u = from_poly(f.num(), var);
  if (!f.den().is_constant()) u = u * Frac(Poly(1), f.den());
  return u;
}

UPoly UPoly::monomial(SymId var, std::size_t k, const Frac& c) {
  std::vector<Frac> cs(k + 1);
  cs[k] = c;
  return UPoly(var, std::move(cs));
}

bool UPoly::has_rational_coefficients() const {
  for (const auto& c : c_)
    if (!c.is_constant()) return false;
  return true;
}

Frac UPoly::to_frac() const {
  Frac acc;
  Frac x = Frac::symbol(var_);
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
  return acc;
}

Poly UPoly::to_poly_cleared() const {
  Poly den(1);
  for (const auto& c : c_) {
    Poly g = gcd(den, c.den());
    den = *divide_exact(den * c.den(), g);
  }
  Poly out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    Poly term = *divide_exact(c_[k].num() * den, c_[k].den());
    out += term.mul_monomial(Monomial::var(var_, static_cast<std::uint32_t>(k)), 1);
  }
  return out;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (c_.empty() && o.c_.empty()) return *this;
  if (c_.empty()) var_ = o.var_;
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) { return *this += -o; }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly(a.var_);
  std::vector<Frac> cs(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) cs[i + j] += a.c_[i] * b.c_[j];
  return UPoly(a.var_, std::move(cs));
}

UPoly UPoly::operator*(const Frac& c) const {
  if (c.is_zero()) return UPoly(var_);
  std::vector<Frac> cs = c_;
  for (auto& x : cs) x *= c;
  return UPoly(var_, std::move(cs));
}

UPoly UPoly::pow(unsigned e) const {
  UPoly r(var_, {Frac(1)});
  for (unsigned k = 0; k < e; ++k) r = r * *this;
  return r;
}

UPoly UPoly::derivative() const {
  std::vector<Frac> cs;
  for (std::size_t k = 1; k < c_.size(); ++k) cs.push_back(c_[k] * Frac(static_cast<long>(k)));
  return UPoly(var_, std::move(cs));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return *this * lc().inverse();
}

Frac UPoly::eval(const Frac& x) const {
  Frac acc;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
  return acc;
}

std::pair<UPoly, UPoly> UPoly::divrem(const UPoly& b) const {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  UPoly r = *this;
  r.var_ = b.var_;
  std::vector<Frac> q(c_.size() >= b.c_.size() ? c_.size() - b.c_.size() + 1 : 0);
  Frac inv = b.lc().inverse();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    std::size_t k = static_cast<std::size_t>(r.degree() - b.degree());
    Frac f = r.lc() * inv;
    q[k] = f;
    for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i + k] -= f * b.c_[i];
    r.trim();
  }
  return {UPoly(b.var_, std::move(q)), r};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = x.mod(y);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtGcd ext_gcd(const UPoly& a, const UPoly& b) {
  SymId v = a.is_zero() ? b.var() : a.var();
  UPoly r0 = a, r1 = b;
  UPoly s0(v, {Frac(1)}), s1(v);
  UPoly t0(v), t1(v, {Frac(1)});
  while (!r1.is_zero()) {
    auto [q, r] = r0.divrem(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UPoly s2 = s0 - q * s1;
    UPoly t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Frac inv = r0.lc().inverse();
  return {r0 * inv, s0 * inv, t0 * inv};
}

UPoly inverse_mod(const UPoly& a, const UPoly& m) {
  auto e = ext_gcd(a.mod(m), m);
  if (e.g.degree() != 0) throw std::domain_error("polynomial not invertible modulo modulus");
  return e.s.mod(m);
}

std::vector<std::pair<UPoly, int>> squarefree(const UPoly& a) {
  std::vector<std::pair<UPoly, int>> out;
  if (a.degree() < 1) return out;
  UPoly f = a.monic();
  UPoly fp = f.derivative();
  UPoly g = gcd(f, fp);
  UPoly w = f.divrem(g).first;
  UPoly y = fp.divrem(g).first;
  int k = 1;
  while (w.degree() > 0) {
    UPoly z = y - w.derivative();
    UPoly h = gcd(w, z);
    if (h.degree() > 0) out.emplace_back(h, k);
    w = w.divrem(h).first;
    y = z.divrem(h).first;
    ++k;
  }
  return out;
}

}  // namespace lvsm
