#pragma once

#include <array>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lvsm/diffstruct.hpp"

namespace lvsm {

using ParamValues = std::map<std::string, double>;
using State = std::array<double, 2>;

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Termination { HorizonReached, BlowUpGuard, StepUnderflow };
const char* to_string(Termination t);

struct Trajectory {
  std::vector<SymId> vars;
  ParamValues params;
  State ic{};
  std::vector<double> t;
  std::vector<State> state;
  Termination reason = Termination::HorizonReached;
  double rtol = 0, atol = 0;
  std::size_t accepted = 0, rejected = 0;
};

struct IntegrateOptions {
  double rtol = 1e-10;
  std::size_t samples = 200;  // grid intervals; the grid has samples + 1 points
  double blowup = 1e6;        // |x| + |y| bound
};

// Numeric form of a planar system with parameters fixed.
class NumericField {
 public:
  NumericField(const PlanarSystem& sys, const ParamValues& params);
  State operator()(const State& s) const;
  const std::map<SymId, double>& values() const { return values_; }

 private:
  struct Term {
    double c;
    std::uint32_t ex, ey;
  };
  std::vector<Term> f_, g_;
  std::map<SymId, double> values_;
};

double evaluate(const Frac& e, const std::map<SymId, double>& values);

// Dormand-Prince 5(4), adaptive, sampled on a uniform grid.
Trajectory integrate(const PlanarSystem& sys, const ParamValues& params, const State& ic, double horizon,
                     const IntegrateOptions& opts = {});

// The same pair with a fixed step, for order measurements.
State integrate_fixed(const PlanarSystem& sys, const ParamValues& params, const State& ic, double horizon,
                      std::size_t steps);

// max |H(t) - H(0)| / max(1, |H(0)|) over the samples.
double conservation_drift(const LogLinearExpr& H, const Trajectory& traj);

enum class RelationVerdict { NoRelationEvidence, RelationEvidence, Inconclusive };
const char* to_string(RelationVerdict v);

struct RelationReport {
  std::vector<std::string> monomials;
  std::size_t samples = 0;
  std::vector<double> spectrum;  // |R_ii| of the column-pivoted QR, descending
  double ratio = 0;              // spectrum.back() / spectrum.front()
  double no_relation_threshold = 1e-6;
  double relation_threshold = 1e-8;
  RelationVerdict verdict = RelationVerdict::Inconclusive;
  bool resampled = false;
};

// Trajectories restricted to their common time span on the grid of the
// first one (linear interpolation where grids differ).
std::vector<std::vector<State>> common_grid(const std::vector<Trajectory>& trajs, std::vector<double>* times,
                                            bool* resampled = nullptr);

RelationReport relation_probe(const std::vector<Trajectory>& trajs, unsigned maxdeg);

// Header t,x,y; 17 significant digits.
void write_csv(const Trajectory& traj, std::ostream& out);

}  // namespace lvsm
