#include "lvsm/lode.hpp"

#include "lvsm/linalg.hpp"

namespace lvsm {

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::HasAlgebraic:
      return "HasAlgebraic";
    case VerdictKind::NoAlgebraic:
      return "NoAlgebraic";
    case VerdictKind::Undecided:
      return "Undecided";
  }
  return "?";
}

Frac witness_log_derivative(const std::vector<std::pair<UPoly, Rational>>& witness, SymId) {
  Frac out;
  for (const auto& [p, e] : witness) out += Frac(e) * p.derivative().to_frac() / p.to_frac();
  return out;
}

AlgSolVerdict algebraic_solution_test(const Frac& F, SymId t) {
  AlgSolVerdict v;
  if (F.is_zero()) {
    v.kind = VerdictKind::HasAlgebraic;
    v.reason = "F = 0: constants are solutions";
    return v;
  }
  auto pf = partial_fractions(F, t);
  if (!pf.polynomial_part.is_zero()) {
    v.kind = VerdictKind::NoAlgebraic;
    v.reason = "nonzero polynomial part";
    return v;
  }
  for (const auto& term : pf.terms) {
    if (term.multiplicity > 1) {
      v.kind = VerdictKind::NoAlgebraic;
      v.reason = "higher-order pole";
      return v;
    }
  }
  for (const auto& term : pf.terms) {
    auto pieces = split_by_residue(F, term.factor);
    if (!pieces) {
      v.kind = VerdictKind::NoAlgebraic;
      v.reason = "non-rational residue";
      v.witness.clear();
      return v;
    }
    for (auto& pe : *pieces) v.witness.push_back(std::move(pe));
  }
  if (witness_log_derivative(v.witness, t) != F)
    throw std::logic_error("algebraic_solution_test: witness does not reproduce F");
  v.kind = VerdictKind::HasAlgebraic;
  v.reason = "simple poles with rational residues";
  return v;
}

namespace {

// Denominator candidates: each denominator factor of F to the power bound.
UPoly candidate_denominator(const Frac& F, unsigned bound, SymId t) {
  UPoly b(t, {Frac(1)});
  UPoly den = UPoly::from_poly(F.den(), t);
  for (const auto& [p, k] : squarefree(den)) b = b * p.pow(bound);
  return b;
}

}  // namespace

std::optional<Frac> rational_solution_search(const Frac& F, const Frac& c, unsigned degree_bound, SymId t) {
  UPoly n = UPoly::from_poly(F.num(), t);
  UPoly d = UPoly::from_poly(F.den(), t);
  UPoly b = candidate_denominator(F, degree_bound, t);
  auto na = static_cast<std::size_t>(degree_bound) + static_cast<std::size_t>(b.degree()) + 1;
  // v = A/B:  D (A' B - A B') - N A B - c D B^2 = 0, linear in A
  UPoly db = b.derivative();
  std::vector<UPoly> cols;
  for (std::size_t k = 0; k < na; ++k) {
    UPoly a = UPoly::monomial(t, k);
    cols.push_back(d * (a.derivative() * b - a * db) - n * a * b);
  }
  UPoly rhs = d * b * b * c;
  std::size_t rows = static_cast<std::size_t>(std::max(rhs.degree(), 0)) + 1;
  for (const auto& col : cols) rows = std::max(rows, static_cast<std::size_t>(std::max(col.degree(), 0)) + 1);
  FracMatrix m(rows, FracVector(na));
  FracVector r(rows);
  for (std::size_t j = 0; j < na; ++j)
    for (std::size_t i = 0; i < rows; ++i) m[i][j] = cols[j].coeff(i);
  for (std::size_t i = 0; i < rows; ++i) r[i] = rhs.coeff(i);

  FracVector sol;
  if (c.is_zero()) {
    auto ker = kernel(m, na);
    if (ker.empty()) return std::nullopt;
    sol = ker.front();
  } else {
    auto s = solve(m, r, na);
    if (!s) return std::nullopt;
    sol = *s;
  }
  Frac v = UPoly(t, sol).to_frac() / b.to_frac();
  if (v.derivative(t) - F * v - c != Frac())
    throw std::logic_error("rational_solution_search: candidate fails verification");
  return v;
}

AlgSolVerdict lemma_family_check(const Frac& q, const Frac& c1, const Frac& c2, LemmaFamily family, SymId t) {
  Frac tt = Frac::symbol(t);
  AlgSolVerdict v;
  if (family == LemmaFamily::TwoD) {
    if (q != Frac(1) || c1 != Frac(-1)) {
      v.kind = VerdictKind::Undecided;
      v.reason = "not of the form v' = (1/t - 1) v + c";
      return v;
    }
    if (c2.is_zero()) {
      v = algebraic_solution_test(Frac(1) / tt - 1, t);
      v.reason = "homogeneous case: " + v.reason;
      return v;
    }
    v.kind = VerdictKind::NoAlgebraic;
    v.reason = "v' = (1/t - 1) v + c with c != 0 has no algebraic solutions";
    return v;
  }

  Frac coeff = q / tt + c1;
  if (q.is_constant()) {
    if (c2.is_zero()) {
      v = algebraic_solution_test(coeff, t);
      v.reason = "homogeneous case: " + v.reason;
      return v;
    }
    v.kind = VerdictKind::Undecided;
    v.reason = "lemma inapplicable: q is rational";
    return v;
  }
  if (c2.is_zero()) {
    v = algebraic_solution_test(coeff, t);
    v.reason = "homogeneous case: " + v.reason;
    return v;
  }
  if (c1.is_zero()) {
    // v = c2 t / (1 - q) solves v' = (q/t) v + c2; the lemma needs c1 != 0
    v.kind = VerdictKind::HasAlgebraic;
    v.solution = c2 * tt / (Frac(1) - q);
    v.reason = "c1 = 0 admits the rational solution c2*t/(1 - q)";
    return v;
  }
  v.kind = VerdictKind::NoAlgebraic;
  v.reason = "q is not rational and c1 != 0";
  return v;
}

}  // namespace lvsm
