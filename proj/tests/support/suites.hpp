#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

// Randomized property and oracle suites shared by the unit tests and the
// acceptance binary. Each returns the number of cases run and failures seen.

namespace lvsm::suites {

struct Result {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
  bool ok() const { return failures == 0; }
};

Result leibniz_tower(std::uint32_t seed, std::size_t n);
Result leibniz_system(std::uint32_t seed, std::size_t n);
Result leibniz_darboux(std::uint32_t seed, std::size_t n);
Result leibniz_puiseux(std::uint32_t seed, std::size_t n);
Result cofactor_additivity(std::uint32_t seed, std::size_t n);
Result partial_fraction_recomposition(std::uint32_t seed, std::size_t n);
Result parser_round_trip(std::uint32_t seed, std::size_t n);
Result loglinear_consistency(std::uint32_t seed, std::size_t n);

// H = (X - Y) + d log X - b log Y on LV_{1,b,1,d} for random rational b, d.
Result random_first_integrals(std::uint32_t seed, std::size_t n);
// A trajectory paired with an algebraic function of itself: ratio < 1e-8.
Result planted_relations(std::uint32_t seed, std::size_t n);
// lemma_family_check against rational_solution_search.
Result lemma_vs_search(std::uint32_t seed, std::size_t n);

// parametric_kernel against plain elimination after specialization.
Result kernel_oracle(std::uint32_t seed, std::size_t n);
// residue_rationality against direct evaluation at rational roots.
Result residue_oracle(std::uint32_t seed, std::size_t n);

}  // namespace lvsm::suites
