#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lvsm/pfrac.hpp"

namespace lvsm {

// y' = F y + c over Q(params)(t), t' = 1.
struct LinearOdeProblem {
  SymId var = 0;
  Frac F;
  Frac c;
};

enum class VerdictKind { HasAlgebraic, NoAlgebraic, Undecided };

struct AlgSolVerdict {
  VerdictKind kind = VerdictKind::Undecided;
  // Homogeneous witness: F = sum e_i p_i'/p_i, i.e. y = prod p_i^e_i.
  std::vector<std::pair<UPoly, Rational>> witness;
  // Explicit solution of an inhomogeneous equation, when one was found.
  std::optional<Frac> solution;
  std::string reason;
};

const char* to_string(VerdictKind k);

// Nonzero algebraic solutions of y' = F y.
AlgSolVerdict algebraic_solution_test(const Frac& F, SymId t);

// Recomputes sum e_i p_i'/p_i.
Frac witness_log_derivative(const std::vector<std::pair<UPoly, Rational>>& witness, SymId t);

enum class LemmaFamily { Classical, TwoD };

// classical: v' = (q/t + c1) v + c2;  twod: v' = (1/t - 1) v + c2.
AlgSolVerdict lemma_family_check(const Frac& q, const Frac& c1, const Frac& c2, LemmaFamily family, SymId t);

// Rational v with v' = F v + c, denominator supported on the denominator
// factors of F with multiplicity <= degree_bound and numerator degree at most
// degree_bound plus the degree of that denominator. For c = 0 only nonzero
// solutions count.
std::optional<Frac> rational_solution_search(const Frac& F, const Frac& c, unsigned degree_bound, SymId t);

}  // namespace lvsm
