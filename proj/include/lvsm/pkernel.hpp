#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "lvsm/linalg.hpp"

namespace lvsm {

// Conditions on the case parameters accumulated along a branch.
struct CaseConditions {
  std::vector<Poly> equations;     // each = 0, as stated when the branch was taken
  std::vector<Poly> disequations;  // each != 0
  // Solved form of the equations: q := value, values free of assigned symbols.
  std::vector<std::pair<SymId, Frac>> assignments;
  // Equations that could not be solved for a case parameter over Q(params).
  std::vector<Poly> unresolved;

  // Evaluates every condition at the given values; all symbols occurring in
  // the conditions must be assigned.
  bool holds(const std::map<SymId, Rational>& values) const;
  Frac apply(const Frac& f) const;
};

enum class LeafStatus { Solved, Unresolved, Exhausted };

struct CaseLeaf {
  CaseConditions conditions;
  LeafStatus status = LeafStatus::Solved;
  // Reduced echelon kernel basis of the specialized system, expressed in the
  // case parameters that remain free.
  std::vector<FracVector> kernel;
};

struct CaseNode {
  std::vector<Poly> equations;  // added on entry to this node
  std::vector<Poly> disequations;
  std::vector<CaseNode> children;
  long leaf = -1;  // index into CaseTree::leaves
};

struct CaseTree {
  CaseNode root;
  std::vector<CaseLeaf> leaves;
  std::size_t nodes = 0;
  bool exhausted = false;
};

struct ParametricKernelOptions {
  std::size_t node_budget = 10000;
};

// Case-split Gauss-Jordan elimination. Entries are fractions in the case
// parameters and the field parameters; an entry free of case parameters is
// taken as nonzero iff it is not identically zero. Pivots that can vanish are
// split into (pivot != 0) and (pivot = 0) branches.
CaseTree parametric_kernel(const FracMatrix& m, std::size_t cols, const std::vector<SymId>& case_params,
                           const ParametricKernelOptions& opts = {});

}  // namespace lvsm
