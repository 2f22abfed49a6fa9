#pragma once

#include <optional>
#include <vector>

#include "lvsm/upoly.hpp"

namespace lvsm {

struct RationalFactorization {
  std::vector<UPoly> factors;  // monic, pairwise distinct
  bool complete = true;        // false if some factor's irreducibility is unproven
};

// Factors a squarefree polynomial with rational coefficients over Q:
// rational roots first, then Kronecker's method on what remains.
RationalFactorization factor_over_q(const UPoly& squarefree_poly);

// Rational roots of a polynomial with rational coefficients, ascending.
// Returns nullopt when the candidate set could not be enumerated.
std::optional<std::vector<Rational>> rational_roots(const UPoly& p);

// Positive divisors of |n| (n != 0); nullopt if |n| has a large composite
// cofactor beyond the trial-division bound.
std::optional<std::vector<Integer>> divisors(const Integer& n);

}  // namespace lvsm
