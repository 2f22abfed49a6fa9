#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lvsm/symbols.hpp"

namespace lvsm {

// Power product of symbols, stored sparsely and sorted by symbol id.
class Monomial {
 public:
  using Factor = std::pair<SymId, std::uint32_t>;

  Monomial() = default;
  static Monomial var(SymId v, std::uint32_t e = 1);

  const std::vector<Factor>& factors() const { return f_; }
  std::uint32_t degree() const { return total_; }
  std::uint32_t degree(SymId v) const;
  bool is_one() const { return f_.empty(); }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  // Precondition: divides(o) is true for *this as divisor of o.
  Monomial quotient_of(const Monomial& o) const;
  Monomial without(SymId v) const;
  Monomial restricted_to(const std::vector<SymId>& vars) const;
  Monomial excluding(const std::vector<SymId>& vars) const;

  bool operator==(const Monomial& o) const { return f_ == o.f_; }
  bool operator!=(const Monomial& o) const { return f_ != o.f_; }

 private:
  std::vector<Factor> f_;
  std::uint32_t total_ = 0;
};

// Graded lexicographic order on symbol ids; a genuine monomial order, used
// as the storage order of polynomials so that the leading term is last.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Graded lexicographic order with an explicit variable precedence. Symbols
// not in the list compare after all listed ones, by name.
class VarOrder {
 public:
  VarOrder() = default;
  explicit VarOrder(std::vector<SymId> vars) : vars_(std::move(vars)) {}

  // true when a precedes b in printing order (a is "bigger").
  bool before(const Monomial& a, const Monomial& b) const;
  const std::vector<SymId>& vars() const { return vars_; }

 private:
  std::vector<SymId> vars_;
};

}  // namespace lvsm
