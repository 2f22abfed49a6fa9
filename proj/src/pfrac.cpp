#include "lvsm/pfrac.hpp"

#include <stdexcept>

#include "lvsm/factor.hpp"
#include "lvsm/linalg.hpp"

namespace lvsm {

Frac PartialFractions::recompose() const {
  Frac acc = polynomial_part.is_zero() ? Frac() : polynomial_part.to_frac();
  for (const auto& t : terms) {
    Frac p = t.factor.to_frac();
    for (std::size_t j = 0; j < t.numerators.size(); ++j) {
      if (t.numerators[j].is_zero()) continue;
      acc += t.numerators[j].to_frac() / p.pow(static_cast<int>(j + 1));
    }
  }
  return acc;
}

std::vector<std::pair<UPoly, int>> factor_denominator(const UPoly& den, bool* complete) {
  std::vector<std::pair<UPoly, int>> out;
  if (complete) *complete = true;
  for (auto& [f, k] : squarefree(den)) {
    std::vector<UPoly> pieces;
    UPoly rest = f;
    if (rest.degree() > 1 && rest.coeff(0).is_zero()) {
      UPoly t = UPoly::monomial(rest.var(), 1);
      pieces.push_back(t);
      rest = rest.divrem(t).first;
    }
    if (rest.degree() > 1 && rest.has_rational_coefficients()) {
      auto fq = factor_over_q(rest);
      if (complete && !fq.complete) *complete = false;
      for (auto& g : fq.factors) pieces.push_back(g);
    } else if (rest.degree() >= 1) {
      pieces.push_back(rest.monic());
    }
    for (auto& p : pieces) out.emplace_back(p, k);
  }
  return out;
}

PartialFractions partial_fractions(const Frac& f, SymId var) {
  PartialFractions out;
  out.var = var;
  UPoly num = UPoly::from_poly(f.num(), var);
  UPoly den = UPoly::from_poly(f.den(), var);
  auto [q, r] = num.divrem(den);
  out.polynomial_part = q;
  if (r.is_zero()) {
    out.polynomial_part = UPoly::from_frac(f, var);
    return out;
  }
  auto factors = factor_denominator(den, &out.factorization_complete);
  for (const auto& [p, k] : factors) {
    UPoly pk = p.pow(static_cast<unsigned>(k));
    UPoly cofactor = den.divrem(pk).first;
    UPoly a = (r * inverse_mod(cofactor, pk)).mod(pk);
    PartialFractionTerm term{p, k, std::vector<UPoly>(static_cast<std::size_t>(k), UPoly(var))};
    // p-adic digits of a: a = sum_j c_j p^j, c_j over p^(k-j)
    for (int j = 0; j < k; ++j) {
      auto [qq, c] = a.divrem(p);
      term.numerators[static_cast<std::size_t>(k - j - 1)] = c;
      a = qq;
    }
    out.terms.push_back(std::move(term));
  }
  return out;
}

namespace {

int multiplicity_in(const UPoly& den, const UPoly& p) {
  int k = 0;
  UPoly d = den;
  while (true) {
    auto [q, r] = d.divrem(p);
    if (!r.is_zero()) break;
    ++k;
    d = q;
    if (d.degree() < p.degree()) break;
  }
  return k;
}

}  // namespace

ResidueResult residue_rationality(const Frac& f, const UPoly& p) {
  if (p.degree() < 1) throw std::invalid_argument("residue factor must be non-constant");
  SymId var = p.var();
  UPoly num = UPoly::from_poly(f.num(), var);
  UPoly den = UPoly::from_poly(f.den(), var);
  ResidueResult res;
  res.multiplicity = multiplicity_in(den, p);
  if (res.multiplicity == 0) throw std::invalid_argument("factor does not divide the denominator");
  if (res.multiplicity > 1) {
    res.kind = ResidueKind::HigherPole;
    return res;
  }
  res.residue_class = (num * inverse_mod(den.derivative(), p)).mod(p);
  const UPoly& rho = res.residue_class;
  if (rho.degree() <= 0) {
    Frac c = rho.coeff(0);
    if (c.is_constant()) {
      res.kind = ResidueKind::Rational;
      res.value = c.constant_value();
      return res;
    }
  }
  res.kind = ResidueKind::NonRational;
  return res;
}

UPoly minimal_polynomial_mod(const UPoly& a, const UPoly& p, SymId z) {
  auto n = static_cast<std::size_t>(p.degree());
  std::vector<UPoly> powers{UPoly(p.var(), {Frac(1)}).mod(p)};
  UPoly x = a.mod(p);
  for (std::size_t k = 1; k <= n; ++k) {
    powers.push_back((powers.back() * x).mod(p));
    FracMatrix m(n, FracVector(k + 1));
    for (std::size_t j = 0; j <= k; ++j)
      for (std::size_t i = 0; i < n; ++i) m[i][j] = powers[j].coeff(i);
    auto ker = kernel(m, k + 1);
    if (!ker.empty()) {
      // the first dependency is unique up to scaling
      return UPoly(z, ker.front()).monic();
    }
  }
  throw std::logic_error("minimal polynomial search exceeded the quotient dimension");
}

std::optional<std::vector<std::pair<UPoly, Rational>>> split_by_residue(const Frac& f, const UPoly& p) {
  auto rr = residue_rationality(f, p);
  if (rr.kind == ResidueKind::HigherPole) return std::nullopt;
  std::vector<std::pair<UPoly, Rational>> out;
  if (rr.kind == ResidueKind::Rational) {
    out.emplace_back(p.monic(), rr.value);
    return out;
  }
  const UPoly& rho = rr.residue_class;
  UPoly mu = minimal_polynomial_mod(rho, p, intern("z__res"));
  if (!mu.has_rational_coefficients()) return std::nullopt;
  auto roots = rational_roots(mu);
  if (!roots || static_cast<int>(roots->size()) != mu.degree()) return std::nullopt;
  for (const auto& e : *roots) {
    UPoly g = gcd(p, rho - UPoly(p.var(), {Frac(e)}));
    if (g.degree() > 0) out.emplace_back(g, e);
  }
  return out;
}

}  // namespace lvsm
