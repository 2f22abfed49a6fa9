#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lvsm/diffstruct.hpp"
#include "lvsm/pkernel.hpp"

namespace lvsm {

// P^D + f*dP/dX + g*dP/dY
MPoly ds_apply(const PlanarSystem& sys, const MPoly& p);

struct InvariantResult {
  bool invariant = false;
  MPoly cofactor;   // valid when invariant
  MPoly remainder;  // nonzero when not invariant
};

// Throws std::invalid_argument for P = 0.
InvariantResult invariant_check(const PlanarSystem& sys, const MPoly& p);

struct DarbouxFamily {
  MPoly poly;                      // may involve the free constants below
  MPoly cofactor;
  std::vector<SymId> free_constants;
  std::vector<SymId> free_cofactor_params;  // cofactor coefficients left free by the branch
  bool reducible = false;
  std::vector<std::size_t> factors;  // indices of lower-degree families dividing it
  long leaf = -1;
};

struct DarbouxOptions {
  ParametricKernelOptions kernel;
};

struct DarbouxCertificate {
  std::uint32_t degree_bound = 0;
  std::vector<Frac> basis;
  std::vector<Frac> ansatz;             // basis element times monomial, one per unknown
  std::vector<SymId> cofactor_params;   // q_nu, one per cofactor monomial
  std::vector<Monomial> cofactor_monomials;
  std::size_t equations = 0;
  CaseTree tree;
  std::vector<DarbouxFamily> families;  // nonconstant solutions, by degree
  std::size_t trivial_leaves = 0;       // leaves whose kernel holds only X,Y-constants
  bool complete = true;                 // false if some leaf is unresolved or exhausted

  std::vector<const DarbouxFamily*> irreducible() const;
};

class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bounded-degree search for invariant polynomials whose coefficients are
// constant combinations of the basis elements.
DarbouxCertificate darboux_search(const PlanarSystem& sys, std::uint32_t max_degree,
                                  const std::vector<Frac>& basis = {Frac(1)}, const DarbouxOptions& opts = {});

// All monomials in vars of total degree <= d, ascending under graded lex.
std::vector<Monomial> monomials_up_to(const std::vector<SymId>& vars, std::uint32_t d);

}  // namespace lvsm
