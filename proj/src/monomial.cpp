#include "lvsm/monomial.hpp"

#include <algorithm>
#include <string>

namespace lvsm {

Monomial Monomial::var(SymId v, std::uint32_t e) {
  Monomial m;
  if (e > 0) {
    m.f_.emplace_back(v, e);
    m.total_ = e;
  }
  return m;
}

std::uint32_t Monomial::degree(SymId v) const {
  for (const auto& [s, e] : f_)
    if (s == v) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.f_.reserve(f_.size() + o.f_.size());
  auto i = f_.begin();
  auto j = o.f_.begin();
  while (i != f_.end() || j != o.f_.end()) {
    if (j == o.f_.end() || (i != f_.end() && i->first < j->first)) {
      r.f_.push_back(*i++);
    } else if (i == f_.end() || j->first < i->first) {
      r.f_.push_back(*j++);
    } else {
      r.f_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  r.total_ = total_ + o.total_;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  auto j = o.f_.begin();
  for (const auto& [s, e] : f_) {
    while (j != o.f_.end() && j->first < s) ++j;
    if (j == o.f_.end() || j->first != s || j->second < e) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r;
  auto i = f_.begin();
  for (const auto& [s, e] : o.f_) {
    while (i != f_.end() && i->first < s) ++i;
    std::uint32_t sub = (i != f_.end() && i->first == s) ? i->second : 0;
    if (e > sub) r.f_.emplace_back(s, e - sub);
  }
  r.total_ = o.total_ - total_;
  return r;
}

Monomial Monomial::without(SymId v) const {
  Monomial r;
  for (const auto& fe : f_)
    if (fe.first != v) {
      r.f_.push_back(fe);
      r.total_ += fe.second;
    }
  return r;
}

Monomial Monomial::restricted_to(const std::vector<SymId>& vars) const {
  Monomial r;
  for (const auto& fe : f_)
    if (std::find(vars.begin(), vars.end(), fe.first) != vars.end()) {
      r.f_.push_back(fe);
      r.total_ += fe.second;
    }
  return r;
}

Monomial Monomial::excluding(const std::vector<SymId>& vars) const {
  Monomial r;
  for (const auto& fe : f_)
    if (std::find(vars.begin(), vars.end(), fe.first) == vars.end()) {
      r.f_.push_back(fe);
      r.total_ += fe.second;
    }
  return r;
}

bool GradedLex::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  auto i = fa.begin();
  auto j = fb.begin();
  while (i != fa.end() || j != fb.end()) {
    if (j == fb.end() || (i != fa.end() && i->first < j->first)) return false;
    if (i == fa.end() || j->first < i->first) return true;
    if (i->second != j->second) return i->second < j->second;
    ++i;
    ++j;
  }
  return false;
}

namespace {

// Compares exponent vectors over the given symbol sequence; returns
// -1/0/+1 for a before/equal/after b.
int lex_compare(const Monomial& a, const Monomial& b, const std::vector<SymId>& seq) {
  for (SymId s : seq) {
    auto ea = a.degree(s);
    auto eb = b.degree(s);
    if (ea != eb) return ea > eb ? -1 : 1;
  }
  return 0;
}

std::vector<SymId> by_name(const Monomial& a, const Monomial& b) {
  std::vector<SymId> seq;
  for (const auto& f : a.factors()) seq.push_back(f.first);
  for (const auto& f : b.factors()) seq.push_back(f.first);
  std::sort(seq.begin(), seq.end(), [](SymId x, SymId y) {
    return symbol_name(x) < symbol_name(y);
  });
  seq.erase(std::unique(seq.begin(), seq.end()), seq.end());
  return seq;
}

}  // namespace

bool VarOrder::before(const Monomial& a, const Monomial& b) const {
  auto va = a.restricted_to(vars_);
  auto vb = b.restricted_to(vars_);
  if (va.degree() != vb.degree()) return va.degree() > vb.degree();
  if (int c = lex_compare(va, vb, vars_); c != 0) return c < 0;
  auto ra = a.excluding(vars_);
  auto rb = b.excluding(vars_);
  if (ra.degree() != rb.degree()) return ra.degree() > rb.degree();
  return lex_compare(ra, rb, by_name(ra, rb)) < 0;
}

}  // namespace lvsm
