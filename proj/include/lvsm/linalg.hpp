#pragma once

#include <optional>
#include <vector>

#include "lvsm/frac.hpp"

namespace lvsm {

using FracVector = std::vector<Frac>;
using FracMatrix = std::vector<FracVector>;  // row-major

// In-place reduced row echelon form over the fraction field; returns the
// pivot column of each nonzero row, in order.
std::vector<std::size_t> rref(FracMatrix& m, std::size_t cols);

// Basis of the right kernel, one vector per free column, with a 1 in the
// free position (reduced echelon basis).
std::vector<FracVector> kernel(FracMatrix m, std::size_t cols);

// Some solution of A x = b, or nullopt if inconsistent.
std::optional<FracVector> solve(const FracMatrix& a, const FracVector& b, std::size_t cols);

FracVector mat_vec(const FracMatrix& m, const FracVector& v);

}  // namespace lvsm
