#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lvsm/upoly.hpp"

namespace lvsm {

// One denominator factor p with multiplicity k; numerators[j] sits over
// p^(j+1) and has degree < deg p.
struct PartialFractionTerm {
  UPoly factor;
  int multiplicity = 1;
  std::vector<UPoly> numerators;
};

struct PartialFractions {
  SymId var = 0;
  UPoly polynomial_part;
  std::vector<PartialFractionTerm> terms;
  bool factorization_complete = true;

  Frac recompose() const;
};

// Splits the denominator into monic pairwise coprime factors with
// multiplicities: squarefree decomposition over the coefficient field,
// followed by factorization over Q of parameter-free pieces and extraction
// of powers of the variable.
std::vector<std::pair<UPoly, int>> factor_denominator(const UPoly& den, bool* complete = nullptr);

PartialFractions partial_fractions(const Frac& f, SymId var);

enum class ResidueKind { Rational, NonRational, HigherPole };

struct ResidueResult {
  ResidueKind kind = ResidueKind::NonRational;
  Rational value;      // meaningful for Rational
  UPoly residue_class;  // num * den'^{-1} mod p, for simple poles
  int multiplicity = 0;
};

// Residue test in the quotient ring K[var]/(p). Throws std::invalid_argument
// if p does not divide the denominator of f.
ResidueResult residue_rationality(const Frac& f, const UPoly& p);

// Minimal polynomial (monic, in a fresh variable z) of the class of `a`
// in K[var]/(p).
UPoly minimal_polynomial_mod(const UPoly& a, const UPoly& p, SymId z);

// For a simple-pole factor p of f: when every residue of f at the roots of p
// is a rational number, splits p into (p_e, e) with p_e = gcd(p, rho - e).
// Returns nullopt if some residue is not rational.
std::optional<std::vector<std::pair<UPoly, Rational>>> split_by_residue(const Frac& f, const UPoly& p);

}  // namespace lvsm
