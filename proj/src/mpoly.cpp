#include "lvsm/mpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace lvsm {

MPoly::MPoly(std::vector<SymId> vars, const Frac& c) : vars_(std::move(vars)) {
  add_term(Monomial{}, c);
}

MPoly MPoly::var(const std::vector<SymId>& vars, SymId v) {
  MPoly p(vars);
  p.add_term(Monomial::var(v), Frac(1));
  return p;
}

MPoly MPoly::from_poly(const Poly& p, const std::vector<SymId>& vars) {
  MPoly out(vars);
  std::map<Monomial, Poly, GradedLex> split;
  for (const auto& [m, c] : p.terms())
    split[m.restricted_to(vars)].add_term(m.excluding(vars), c);
  for (auto& [m, c] : split) out.add_term(m, Frac(c));
  return out;
}

MPoly MPoly::from_frac(const Frac& f, const std::vector<SymId>& vars) {
  for (SymId v : vars)
    if (f.den().has(v))
      throw std::invalid_argument("denominator depends on variable " + symbol_name(v));
  MPoly out = from_poly(f.num(), vars);
  if (!f.den().is_constant()) {
    Frac inv = Frac(Poly(1), f.den());
    for (auto& [m, c] : out.terms_) c *= inv;
  }
  return out;
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

std::uint32_t MPoly::degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

std::uint32_t MPoly::degree(SymId v) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree(v));
  return d;
}

Frac MPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Frac() : it->second;
}

std::vector<std::pair<Monomial, Frac>> MPoly::sorted_terms() const {
  std::vector<std::pair<Monomial, Frac>> out(terms_.begin(), terms_.end());
  VarOrder ord(vars_);
  std::stable_sort(out.begin(), out.end(),
                   [&](const auto& a, const auto& b) { return ord.before(a.first, b.first); });
  return out;
}

std::pair<Monomial, Frac> MPoly::leading_term() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  VarOrder ord(vars_);
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
    if (ord.before(it->first, best->first)) best = it;
  return *best;
}

MPoly MPoly::monic() const {
  if (is_zero()) return *this;
  return *this * leading_term().second.inverse();
}

Frac MPoly::to_frac() const {
  // Collect over a common denominator before reducing once.
  Frac acc;
  for (const auto& [m, c] : terms_) acc += c * Frac(Poly::term(m, 1));
  return acc;
}

void MPoly::add_term(const Monomial& m, const Frac& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (vars_.empty()) vars_ = o.vars_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  if (vars_.empty()) vars_ = o.vars_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r(a.vars_.empty() ? b.vars_ : a.vars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

MPoly MPoly::operator*(const Frac& c) const {
  MPoly r(vars_);
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

MPoly MPoly::operator-() const { return *this * Frac(-1); }

MPoly MPoly::partial(SymId v) const {
  MPoly r(vars_);
  for (const auto& [m, c] : terms_) {
    auto e = m.degree(v);
    if (e == 0) continue;
    r.add_term(m.without(v) * Monomial::var(v, e - 1), c * Frac(static_cast<long>(e)));
  }
  return r;
}

std::pair<MPoly, MPoly> MPoly::divrem(const MPoly& b) const {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  auto [lm, lc] = b.leading_term();
  Frac lc_inv = lc.inverse();
  MPoly q(vars_), r(vars_), p = *this;
  VarOrder ord(vars_);
  while (!p.is_zero()) {
    auto [pm, pc] = p.leading_term();
    if (lm.divides(pm)) {
      Monomial t = lm.quotient_of(pm);
      Frac c = pc * lc_inv;
      q.add_term(t, c);
      for (const auto& [bm, bc] : b.terms_) p.add_term(t * bm, -(c * bc));
    } else {
      r.add_term(pm, pc);
      p.add_term(pm, -pc);
    }
  }
  return {q, r};
}

}  // namespace lvsm
