#include "lvsm/factor.hpp"

#include <algorithm>
#include <stdexcept>

namespace lvsm {

namespace {

using IPoly = std::vector<Integer>;  // coefficient k multiplies x^k

constexpr unsigned long kTrialBound = 1000000;
constexpr std::size_t kKroneckerBudget = 200000;

IPoly to_integral(const UPoly& p) {
  Integer den = 1;
  for (const auto& c : p.coeffs()) {
    Rational r = c.constant_value();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.get_den_mpz_t());
  }
  IPoly out;
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    Rational r = c.constant_value() * den;
    out.push_back(r.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.get_num_mpz_t());
  }
  if (g != 0 && g != 1)
    for (auto& c : out) c /= g;
  return out;
}

UPoly from_integral(SymId var, const IPoly& p) {
  std::vector<Frac> cs;
  for (const auto& c : p) cs.emplace_back(Rational(c));
  return UPoly(var, std::move(cs)).monic();
}

Rational eval(const IPoly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + Rational(p[k]);
  return acc;
}

// Exact division of integer polynomials; nullopt if not exact over Z.
std::optional<IPoly> divide(const IPoly& a, const IPoly& b) {
  if (b.size() > a.size()) return std::nullopt;
  IPoly r = a;
  IPoly q(a.size() - b.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Integer& top = r[k + b.size() - 1];
    if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    q[k] = top / b.back();
    for (std::size_t i = 0; i < b.size(); ++i) r[k + i] -= q[k] * b[i];
  }
  for (const auto& c : r)
    if (c != 0) return std::nullopt;
  return q;
}

// Lagrange interpolation through (xs[i], ys[i]); nullopt if coefficients
// are not integers.
std::optional<IPoly> interpolate(const std::vector<long>& xs, const std::vector<Integer>& ys) {
  std::size_t n = xs.size();
  std::vector<Rational> coeffs(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * xs[j];
      }
      basis = std::move(next);
      denom *= (xs[i] - xs[j]);
    }
    Rational scale = Rational(ys[i]) / denom;
    for (std::size_t k = 0; k < n; ++k) coeffs[k] += basis[k] * scale;
  }
  IPoly out;
  for (auto& c : coeffs) {
    c.canonicalize();
    if (c.get_den() != 1) return std::nullopt;
    out.push_back(c.get_num());
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

// Searches for a factor of exact degree d via Kronecker's method.
// Returns {factor or nullopt, exhausted-budget flag}.
std::pair<std::optional<IPoly>, bool> kronecker_factor(const IPoly& p, std::size_t d) {
  std::vector<long> xs;
  std::vector<std::vector<Integer>> choices;
  std::size_t combos = 1;
  for (long x = 0; xs.size() < d + 1; x = (x <= 0 ? 1 - x : -x)) {
    Rational v = eval(p, Rational(x));
    if (v == 0) continue;
    auto ds = divisors(v.get_num());
    if (!ds) return {std::nullopt, true};
    std::vector<Integer> signed_ds;
    for (const auto& q : *ds) {
      signed_ds.push_back(q);
      signed_ds.push_back(-q);
    }
    combos *= signed_ds.size();
    if (combos > kKroneckerBudget) return {std::nullopt, true};
    xs.push_back(x);
    choices.push_back(std::move(signed_ds));
  }
  std::vector<std::size_t> idx(choices.size(), 0);
  // First value is fixed positive: factors are determined up to sign.
  while (true) {
    if (idx[0] % 2 == 0) {
      std::vector<Integer> ys;
      for (std::size_t i = 0; i < idx.size(); ++i) ys.push_back(choices[i][idx[i]]);
      if (auto cand = interpolate(xs, ys); cand && cand->size() == d + 1) {
        if (auto q = divide(p, *cand); q) return {*cand, false};
      }
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return {std::nullopt, false};
}

}  // namespace

std::optional<std::vector<Integer>> divisors(const Integer& n) {
  Integer m = abs(n);
  if (m == 0) throw std::invalid_argument("divisors of zero");
  std::vector<std::pair<Integer, unsigned>> primes;
  for (unsigned long p = 2; p <= kTrialBound && Integer(p) * p <= m; ++p) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        m /= p;
        ++e;
      }
      primes.emplace_back(Integer(p), e);
    }
  }
  if (m > 1) {
    if (Integer(kTrialBound) * kTrialBound < m && mpz_probab_prime_p(m.get_mpz_t(), 30) == 0)
      return std::nullopt;
    primes.emplace_back(m, 1);
  }
  std::vector<Integer> ds{Integer(1)};
  for (const auto& [p, e] : primes) {
    std::size_t base = ds.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

std::optional<std::vector<Rational>> rational_roots(const UPoly& p) {
  if (!p.has_rational_coefficients()) throw std::invalid_argument("rational_roots: parametric coefficients");
  std::vector<Rational> roots;
  if (p.degree() < 1) return roots;
  IPoly ip = to_integral(p);
  std::size_t shift = 0;
  while (shift < ip.size() && ip[shift] == 0) ++shift;
  if (shift > 0) {
    roots.push_back(0);
    ip.erase(ip.begin(), ip.begin() + static_cast<long>(shift));
  }
  if (ip.size() > 1) {
    auto dp = divisors(ip.front());
    auto dq = divisors(ip.back());
    if (!dp || !dq) return std::nullopt;
    for (const auto& a : *dp)
      for (const auto& b : *dq)
        for (int s : {1, -1}) {
          Rational r(a * s, b);
          r.canonicalize();
          if (eval(ip, r) == 0) roots.push_back(r);
        }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

RationalFactorization factor_over_q(const UPoly& poly) {
  RationalFactorization out;
  if (poly.degree() < 1) return out;
  SymId var = poly.var();
  UPoly rest = poly.monic();
  auto roots = rational_roots(rest);
  if (!roots) {
    out.factors.push_back(rest);
    out.complete = rest.degree() <= 1;
    return out;
  }
  for (const auto& r : *roots) {
    UPoly lin(var, {Frac(-r), Frac(1)});
    out.factors.push_back(lin);
    rest = rest.divrem(lin).first;
  }
  if (rest.degree() < 1) return out;
  if (rest.degree() <= 3) {
    out.factors.push_back(rest.monic());
    return out;
  }
  IPoly ip = to_integral(rest);
  std::vector<IPoly> pending{ip};
  while (!pending.empty()) {
    IPoly p = pending.back();
    pending.pop_back();
    std::size_t n = p.size() - 1;
    bool split = false;
    if (n >= 4) {
      for (std::size_t d = 2; d <= n / 2 && !split; ++d) {
        auto [f, exhausted] = kronecker_factor(p, d);
        if (exhausted) out.complete = false;
        if (f) {
          pending.push_back(*f);
          pending.push_back(*divide(p, *f));
          split = true;
        }
      }
    }
    if (!split) out.factors.push_back(from_integral(var, p));
  }
  return out;
}

}  // namespace lvsm
