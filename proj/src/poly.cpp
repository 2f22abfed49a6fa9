#include "lvsm/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace lvsm {

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Poly::Poly(long c) : Poly(Rational(c)) {}

Poly Poly::symbol(SymId v) { return term(Monomial::var(v), 1); }

Poly Poly::term(const Monomial& m, const Rational& c) {
  Poly p;
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_term() const { return coefficient(Monomial{}); }

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t Poly::degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

std::uint32_t Poly::degree(SymId v) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree(v));
  return d;
}

std::set<SymId> Poly::symbols() const {
  std::set<SymId> out;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) out.insert(f.first);
  return out;
}

bool Poly::has(SymId v) const {
  for (const auto& [m, c] : terms_)
    if (m.degree(v) > 0) return true;
  return false;
}

bool Poly::free_of(const std::set<SymId>& vs) const {
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors())
      if (vs.count(f.first)) return false;
  return true;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.is_zero() || b.is_zero()) return r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::mul_monomial(const Monomial& m, const Rational& c) const {
  Poly r;
  if (c == 0) return r;
  for (const auto& [mm, cc] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, cc * c);
  return r;
}

Poly Poly::derivative(SymId v) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    auto e = m.degree(v);
    if (e == 0) continue;
    r.add_term(m.without(v) * Monomial::var(v, e - 1), c * e);
  }
  return r;
}

std::vector<Poly> Poly::coefficients(SymId v) const {
  std::vector<Poly> cs(degree(v) + 1);
  for (const auto& [m, c] : terms_) cs[m.degree(v)].add_term(m.without(v), c);
  return cs;
}

Poly Poly::from_coefficients(SymId v, const std::vector<Poly>& cs) {
  Poly r;
  for (std::size_t k = 0; k < cs.size(); ++k)
    r += cs[k].mul_monomial(Monomial::var(v, static_cast<std::uint32_t>(k)), 1);
  return r;
}

Poly Poly::substitute(SymId v, const Poly& e) const {
  if (!has(v)) return *this;
  auto cs = coefficients(v);
  Poly acc = cs.back();
  for (std::size_t k = cs.size() - 1; k-- > 0;) acc = acc * e + cs[k];
  return acc;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return Poly{};
  if (b.is_constant()) {
    Poly q = a;
    q *= Rational(1) / b.constant_term();
    return q;
  }
  Poly r = a;
  Poly q;
  const auto& lm = b.leading_monomial();
  const auto& lc = b.leading_coefficient();
  while (!r.is_zero()) {
    const auto& rm = r.leading_monomial();
    if (!lm.divides(rm)) return std::nullopt;
    Monomial t = lm.quotient_of(rm);
    Rational c = r.leading_coefficient() / lc;
    q.add_term(t, c);
    r -= b.mul_monomial(t, c);
  }
  return q;
}

Rational content(const Poly& p) {
  if (p.is_zero()) return 0;
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (const auto& [m, c] : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational r(num_gcd, den_lcm);
  r.canonicalize();
  return r;
}

Poly primitive_part(const Poly& p) {
  if (p.is_zero()) return p;
  Rational c = content(p);
  if (p.leading_coefficient() < 0) c = -c;
  Poly q = p;
  q *= Rational(1) / c;
  return q;
}

namespace {

using UP = std::vector<Poly>;  // coefficients in the main variable

void trim(UP& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

// lc(b)^(deg a - deg b + 1) * a mod b in the main variable.
UP prem(UP a, const UP& b) {
  const Poly& lc = b.back();
  const std::size_t db = b.size() - 1;
  trim(a);
  std::size_t steps = a.size() - db;
  while (!a.empty() && a.size() - 1 >= db) {
    std::size_t k = a.size() - 1 - db;
    Poly lr = a.back();
    for (auto& c : a) c = c * lc;
    for (std::size_t i = 0; i <= db; ++i) a[i + k] -= lr * b[i];
    trim(a);
    --steps;
  }
  if (steps && !a.empty()) {
    Poly f = lc.pow(static_cast<unsigned>(steps));
    for (auto& c : a) c = c * f;
  }
  return a;
}

UP divide_all(UP u, const Poly& d) {
  for (auto& c : u) {
    auto q = divide_exact(c, d);
    if (!q) throw std::logic_error("gcd: inexact subresultant division");
    c = std::move(*q);
  }
  return u;
}

Poly gcd_impl(const Poly& a, const Poly& b);

Poly content_in(const UP& u) {
  // smallest coefficients first: the running gcd shrinks quickly
  std::vector<const Poly*> cs;
  for (const auto& c : u)
    if (!c.is_zero()) cs.push_back(&c);  // zero counts as constant below
  std::sort(cs.begin(), cs.end(), [](const Poly* x, const Poly* y) {
    if (x->degree() != y->degree()) return x->degree() < y->degree();
    return x->size() < y->size();
  });
  Poly g;
  for (const Poly* c : cs) {
    g = gcd_impl(g, *c);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

UP primitive_in(const UP& u) {
  Poly c = content_in(u);
  UP out;
  out.reserve(u.size());
  for (const auto& x : u) {
    auto q = divide_exact(x, c);
    if (!q) throw std::logic_error("gcd: content does not divide a coefficient");
    out.push_back(std::move(*q));
  }
  return out;
}

UP to_up(const Poly& p, SymId v) { return p.coefficients(v); }

Poly monomial_gcd(const Monomial& m, const Poly& p) {
  Monomial g = m;
  for (const auto& [pm, c] : p.terms()) {
    Monomial next;
    for (const auto& [s, e] : g.factors()) {
      auto pe = pm.degree(s);
      auto k = std::min(e, pe);
      if (k) next = next * Monomial::var(s, k);
    }
    g = next;
    if (g.is_one()) break;
  }
  return Poly::term(g, 1);
}

Poly gcd_impl(const Poly& a, const Poly& b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a.size() == 1) return monomial_gcd(a.leading_monomial(), b);
  if (b.size() == 1) return monomial_gcd(b.leading_monomial(), a);
  if (a == b) return primitive_part(a);

  auto sa = a.symbols();
  auto sb = b.symbols();
  // shared symbol of least degree keeps the remainder sequence short
  SymId v = 0;
  bool found = false;
  std::uint32_t best = 0;
  for (SymId s : sa)
    if (sb.count(s)) {
      auto d = std::max(a.degree(s), b.degree(s));
      if (!found || d < best) {
        v = s;
        best = d;
        found = true;
      }
    }
  if (!found) {
    // No shared symbol: gcd divides the content of a with respect to any
    // symbol of a, which is free of that symbol.
    SymId s = *sa.begin();
    return gcd_impl(content_in(to_up(a, s)), b);
  }
  for (SymId s : sa)
    if (!sb.count(s)) return gcd_impl(content_in(to_up(a, s)), b);
  for (SymId s : sb)
    if (!sa.count(s)) return gcd_impl(a, content_in(to_up(b, s)));

  UP ua = to_up(a, v);
  UP ub = to_up(b, v);
  Poly ca = content_in(ua);
  Poly cb = content_in(ub);
  Poly cg = gcd_impl(ca, cb);
  ua = primitive_in(ua);
  ub = primitive_in(ub);
  if (ua.size() < ub.size()) std::swap(ua, ub);
  // subresultant remainder sequence
  UP g;
  Poly sg(1), sh(1);
  while (true) {
    std::size_t delta = ua.size() - ub.size();
    UP r = prem(ua, ub);
    if (r.empty()) {
      g = primitive_in(ub);
      break;
    }
    if (r.size() == 1) {
      g = UP{Poly(1)};
      break;
    }
    ua = std::move(ub);
    ub = divide_all(std::move(r), sg * sh.pow(static_cast<unsigned>(delta)));
    sg = ua.back();
    if (delta == 0) continue;
    Poly num = sg.pow(static_cast<unsigned>(delta));
    sh = delta == 1 ? num : *divide_exact(num, sh.pow(static_cast<unsigned>(delta - 1)));
  }
  Poly h = Poly::from_coefficients(v, g);
  return primitive_part(cg * h);
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) { return gcd_impl(a, b); }

}  // namespace lvsm
