#include "lvsm/pkernel.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "lvsm/factor.hpp"
#include "lvsm/upoly.hpp"

namespace lvsm {

bool CaseConditions::holds(const std::map<SymId, Rational>& values) const {
  auto eval = [&](const Poly& p) {
    Frac f(p);
    for (const auto& [s, v] : values) f = f.substitute(s, Frac(v));
    if (!f.is_constant()) throw std::invalid_argument("condition has unassigned symbols");
    return f.constant_value();
  };
  for (const auto& e : equations)
    if (eval(e) != 0) return false;
  for (const auto& e : unresolved)
    if (eval(e) != 0) return false;
  for (const auto& e : disequations)
    if (eval(e) == 0) return false;
  return true;
}

Frac CaseConditions::apply(const Frac& f) const {
  Frac out = f;
  for (const auto& [s, v] : assignments) out = out.substitute(s, v);
  return out;
}

namespace {

struct State {
  FracMatrix m;
  std::vector<bool> row_used;
  std::vector<bool> col_pivot;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  CaseConditions cond;
  std::vector<Poly> live;  // disequations rewritten under the assignments
  bool stop = false;       // an unresolved equation was imposed
};

// Splits p by monomials in the case parameters; values are coefficient
// polynomials free of them.
std::map<Monomial, Poly, GradedLex> split_by(const Poly& p, const std::vector<SymId>& qs) {
  std::map<Monomial, Poly, GradedLex> out;
  for (const auto& [m, c] : p.terms()) out[m.restricted_to(qs)].add_term(m.excluding(qs), c);
  return out;
}

class Solver {
 public:
  Solver(std::size_t cols, const std::vector<SymId>& qs, const ParametricKernelOptions& opts, CaseTree& tree)
      : cols_(cols), qs_(qs), qset_(qs.begin(), qs.end()), opts_(opts), tree_(tree) {}

  void run(State s, CaseNode& node) {
    if (++tree_.nodes > opts_.node_budget) {
      tree_.exhausted = true;
      finish(s, node, LeafStatus::Exhausted);
      return;
    }
    if (s.stop) {
      finish(s, node, LeafStatus::Unresolved);
      return;
    }
    while (true) {
      if (auto p = find_free_pivot(s)) {
        pivot(s, p->first, p->second);
        continue;
      }
      auto p = find_parametric_pivot(s);
      if (!p) {
        finish(s, node, LeafStatus::Solved);
        return;
      }
      auto [i, j] = *p;
      Poly n = strip_content(s.m[i][j].num());

      State nonzero = s;
      nonzero.cond.disequations.push_back(n);
      nonzero.live.push_back(n);
      pivot(nonzero, i, j);
      CaseNode& nz = node.children.emplace_back();
      nz.disequations.push_back(n);
      run(std::move(nonzero), nz);

      for (State& z : impose(n, s)) {
        CaseNode& child = node.children.emplace_back();
        for (std::size_t k = s.cond.equations.size(); k < z.cond.equations.size(); ++k)
          child.equations.push_back(z.cond.equations[k]);
        for (std::size_t k = s.cond.disequations.size(); k < z.cond.disequations.size(); ++k)
          child.disequations.push_back(z.cond.disequations[k]);
        run(std::move(z), child);
      }
      return;
    }
  }

 private:
  bool depends(const Frac& f) const { return !f.free_of(qset_); }

  static std::size_t weight(const Frac& f) { return f.num().size() + f.den().size(); }

  std::uint32_t qdegree(const Poly& p) const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : p.terms()) d = std::max(d, m.restricted_to(qs_).degree());
    return d;
  }

  std::optional<std::pair<std::size_t, std::size_t>> find_free_pivot(const State& s) const {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (s.col_pivot[j]) continue;
      std::optional<std::size_t> best;
      for (std::size_t i = 0; i < s.m.size(); ++i) {
        if (s.row_used[i] || s.m[i][j].is_zero() || depends(s.m[i][j])) continue;
        if (!best || weight(s.m[i][j]) < weight(s.m[*best][j])) best = i;
      }
      if (best) return std::make_pair(*best, j);
    }
    return std::nullopt;
  }

  std::optional<std::pair<std::size_t, std::size_t>> find_parametric_pivot(const State& s) const {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (s.col_pivot[j]) continue;
      std::optional<std::size_t> best;
      for (std::size_t i = 0; i < s.m.size(); ++i) {
        if (s.row_used[i] || s.m[i][j].is_zero()) continue;
        if (!best) {
          best = i;
          continue;
        }
        const Poly& a = s.m[i][j].num();
        const Poly& b = s.m[*best][j].num();
        auto ka = std::make_pair(qdegree(a), a.size());
        auto kb = std::make_pair(qdegree(b), b.size());
        if (ka < kb) best = i;
      }
      if (best) return std::make_pair(*best, j);
    }
    return std::nullopt;
  }

  void pivot(State& s, std::size_t i, std::size_t j) const {
    Frac inv = s.m[i][j].inverse();
    for (std::size_t c = 0; c < cols_; ++c)
      if (!s.m[i][c].is_zero()) s.m[i][c] *= inv;
    for (std::size_t r = 0; r < s.m.size(); ++r) {
      if (r == i || s.m[r][j].is_zero()) continue;
      Frac f = s.m[r][j];
      for (std::size_t c = 0; c < cols_; ++c)
        if (!s.m[i][c].is_zero()) s.m[r][c] -= f * s.m[i][c];
    }
    s.row_used[i] = true;
    s.col_pivot[j] = true;
    s.pivots.emplace_back(i, j);
  }

  // Removes the factor free of case parameters (nonzero for generic
  // parameters) and normalizes.
  Poly strip_content(const Poly& n) const {
    Poly g;
    for (const auto& [m, c] : split_by(n, qs_)) g = g.is_zero() ? c : gcd(g, c);
    Poly out = g.is_zero() ? n : *divide_exact(n, g);
    return primitive_part(out);
  }

  // Factors of n over the case parameters, as far as they can be found:
  // univariate pieces with rational coefficients are factored over Q.
  std::vector<Poly> factors(const Poly& n) const {
    std::set<SymId> occurring;
    for (SymId q : qs_)
      if (n.has(q)) occurring.insert(q);
    if (occurring.size() != 1) return {n};
    SymId q = *occurring.begin();
    std::vector<Poly> out;
    for (const auto& [f, k] : squarefree(UPoly::from_poly(n, q))) {
      if (f.has_rational_coefficients()) {
        for (const auto& g : factor_over_q(f).factors) out.push_back(primitive_part(g.to_poly_cleared()));
      } else {
        out.push_back(strip_content(f.to_poly_cleared()));
      }
    }
    return out;
  }

  // Refines s by n = 0 into mutually exclusive states.
  std::vector<State> impose(const Poly& n0, const State& s) const {
    Frac nf = s.cond.apply(Frac(n0));
    if (nf.is_zero()) return {s};
    if (!depends(nf)) return {};
    Poly n = strip_content(nf.num());
    std::vector<State> out;
    auto fs = factors(n);
    for (std::size_t k = 0; k < fs.size(); ++k) {
      State st = s;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) ok = add_disequation(st, fs[j]);
      if (!ok) continue;
      st.cond.equations.push_back(fs[k]);
      for (State& r : solve_factor(fs[k], st)) out.push_back(std::move(r));
    }
    return out;
  }

  std::vector<State> solve_factor(const Poly& f, State st) const {
    // prefer a case parameter occurring linearly with a coefficient free of
    // case parameters
    std::optional<SymId> chosen;
    for (SymId q : qs_) {
      if (f.degree(q) != 1) continue;
      auto cs = f.coefficients(q);
      if (!depends(Frac(cs[1]))) {
        chosen = q;
        break;
      }
    }
    if (chosen) {
      auto cs = f.coefficients(*chosen);
      if (!assign(st, *chosen, Frac(-cs[0], cs[1]))) return {};
      return {std::move(st)};
    }
    for (SymId q : qs_) {
      if (f.degree(q) != 1) continue;
      auto cs = f.coefficients(q);
      std::vector<State> out;
      State a = st;
      if (add_disequation(a, cs[1]) && assign(a, q, Frac(-cs[0], cs[1]))) out.push_back(std::move(a));
      for (State& b : impose(cs[1], st))
        for (State& c : impose(cs[0], b)) out.push_back(std::move(c));
      return out;
    }
    st.cond.equations.pop_back();
    st.cond.unresolved.push_back(f);
    st.stop = true;
    return {std::move(st)};
  }

  bool add_disequation(State& st, const Poly& p) const {
    Frac v = st.cond.apply(Frac(p));
    if (v.is_zero()) return false;
    st.cond.disequations.push_back(p);
    if (depends(v)) st.live.push_back(v.num());
    return true;
  }

  bool assign(State& st, SymId q, const Frac& value) const {
    // pivots taken so far are in `live`; checking them first keeps the
    // matrix denominators nonzero under the substitution
    std::vector<Poly> live;
    for (const auto& d : st.live) {
      Frac v = substitute(d, q, value);
      if (v.is_zero()) return false;
      if (depends(v)) live.push_back(v.num());
    }
    st.live = std::move(live);
    for (auto& [s, v] : st.cond.assignments) v = v.substitute(q, value);
    st.cond.assignments.emplace_back(q, value);
    for (auto& row : st.m)
      for (auto& e : row)
        if (e.has(q)) e = e.substitute(q, value);
    return true;
  }

  void finish(const State& s, CaseNode& node, LeafStatus status) {
    CaseLeaf leaf;
    leaf.conditions = s.cond;
    leaf.status = status;
    if (status == LeafStatus::Solved) {
      for (std::size_t f = 0; f < cols_; ++f) {
        if (s.col_pivot[f]) continue;
        FracVector v(cols_);
        v[f] = Frac(1);
        for (const auto& [r, c] : s.pivots) v[c] = -s.m[r][f];
        leaf.kernel.push_back(std::move(v));
      }
    }
    node.leaf = static_cast<long>(tree_.leaves.size());
    tree_.leaves.push_back(std::move(leaf));
  }

  std::size_t cols_;
  const std::vector<SymId>& qs_;
  std::set<SymId> qset_;
  const ParametricKernelOptions& opts_;
  CaseTree& tree_;
};

}  // namespace

CaseTree parametric_kernel(const FracMatrix& m, std::size_t cols, const std::vector<SymId>& case_params,
                           const ParametricKernelOptions& opts) {
  CaseTree tree;
  State s;
  s.m = m;
  for (auto& row : s.m) row.resize(cols);
  s.row_used.assign(m.size(), false);
  s.col_pivot.assign(cols, false);
  Solver(cols, case_params, opts, tree).run(std::move(s), tree.root);
  return tree;
}

}  // namespace lvsm
