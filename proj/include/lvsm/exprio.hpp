#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lvsm/mpoly.hpp"

namespace lvsm {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct ExprAst {
  enum class Kind { Number, Symbol, Add, Mul, Neg, Pow, Div };
  Kind kind = Kind::Number;
  std::size_t offset = 0;
  Rational value;              // Number
  std::string name;            // Symbol
  unsigned long exponent = 0;  // Pow
  std::vector<ExprAst> children;
};

// Declared symbols. `vars` are the main (dynamical) variables; everything
// else is a coefficient symbol.
struct SymbolTable {
  std::vector<SymId> vars;
  std::set<SymId> declared;

  SymbolTable() = default;
  SymbolTable(const std::vector<std::string>& vars, const std::vector<std::string>& others);
  void declare(std::string_view name) { declared.insert(intern(name)); }
  bool has(std::string_view name) const { return is_interned(name) && declared.count(intern(name)) > 0; }
};

// Syntax only; symbols are not checked.
ExprAst parse_expr(std::string_view text);

// Rational function over the declared symbols.
Frac parse_ratfunc(std::string_view text, const SymbolTable& ctx);
// Polynomial in ctx.vars; coefficients may be fractions in the other symbols.
MPoly parse_poly(std::string_view text, const SymbolTable& ctx);

std::string format_poly(const Poly& p, const VarOrder& order = {});
std::string format_frac(const Frac& f, const VarOrder& order = {});
std::string format_poly(const MPoly& p);
std::string format_rational(const Rational& r);

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SystemSpec {
  std::string name;
  std::vector<std::string> vars;
  std::vector<std::string> params;
  std::map<std::string, std::string> fprime;
  std::vector<std::string> nondegenerate;
  std::vector<std::pair<std::string, std::string>> tower;  // declaration order

  SymbolTable symbols() const;
  std::string to_text() const;
};

SystemSpec parse_system(std::string_view doc, std::string name = "");
std::optional<SystemSpec> preset_system(std::string_view name);
std::vector<std::string> preset_names();
// A preset name or a path to a spec file.
SystemSpec load_system(const std::string& name_or_path);

}  // namespace lvsm
