#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lvsm/exprio.hpp"
#include "lvsm/mpoly.hpp"

namespace lvsm {

class UndeclaredSymbol : public std::invalid_argument {
 public:
  explicit UndeclaredSymbol(const std::string& name)
      : std::invalid_argument("undeclared symbol '" + name + "'") {}
};

// Finitely presented differential field Q(params)(g1, ..., gk) with constant
// parameters, generators with prescribed derivatives and formal differential
// indeterminates whose derivatives are fresh primed symbols.
class DiffTower {
 public:
  DiffTower() = default;
  // The tower Q(t) with t' = 1.
  static DiffTower time(const std::string& t = "t");

  void add_parameter(SymId p);
  // The derivative may mention parameters, earlier generators and g itself.
  void add_generator(SymId g, const Frac& derivative);
  // Declares a and all of its formal derivatives a', a'', ...
  void add_indeterminate(SymId a);

  bool declares(SymId s) const;
  bool is_parameter(SymId s) const { return params_.count(s) > 0; }
  bool is_generator(SymId s) const;
  const std::set<SymId>& parameters() const { return params_; }
  const std::vector<std::pair<SymId, Frac>>& generators() const { return gens_; }

  Frac derivative_of(SymId s) const;
  Frac derive(const Frac& e) const;

  // Substitutes into the prescribed generator derivatives.
  void substitute(SymId p, const Frac& value);

 private:
  std::set<SymId> params_;
  std::vector<std::pair<SymId, Frac>> gens_;
  std::set<SymId> indets_;  // unprimed names
};

// X' = f, Y' = g over a differential tower.
struct PlanarSystem {
  std::vector<SymId> vars;
  MPoly f, g;
  std::vector<MPoly> nondegenerate;
  DiffTower tower;
  std::string name;

  std::uint32_t max_degree() const { return std::max(f.degree(), g.degree()); }
  const MPoly& field(SymId v) const { return v == vars[0] ? f : g; }
  SymbolTable symbols() const;
  VarOrder order() const { return VarOrder(vars); }

  // Parameter overrides map a parameter name to an expression in the other
  // parameters ("d" -> "b", "a" -> "1"); the parameter stays declared.
  static PlanarSystem from_spec(const SystemSpec& spec, const std::map<std::string, std::string>& overrides = {});
  // Builds x' = f, y' = g from expressions over the given parameters.
  static PlanarSystem make(const std::string& f, const std::string& g, const std::vector<std::string>& params,
                           const std::vector<std::string>& vars = {"X", "Y"});
};

// Derivation on the tower, extended to rational functions.
Frac derive(const Frac& e, const DiffTower& tower);

// e^D + f*de/dX + g*de/dY, where e^D differentiates the coefficients.
Frac derive_system(const Frac& e, const PlanarSystem& sys);

struct LogTerm {
  Frac coeff;
  Frac arg;
};

// rational + sum coeff_i * log(arg_i)
struct LogLinearExpr {
  Frac rational;
  std::vector<LogTerm> logs;

  // Merges with an existing term of identical argument; drops zero
  // coefficients. Throws std::invalid_argument for a zero argument.
  void add_log(const Frac& coeff, const Frac& arg);
  std::string to_string(const VarOrder& order = {}) const;
};

// derive_system(rational) + sum coeff_i * derive_system(arg_i) / arg_i
Frac loglinear_derive(const LogLinearExpr& h, const PlanarSystem& sys);

}  // namespace lvsm
