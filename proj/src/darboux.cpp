#include "lvsm/darboux.hpp"

#include <algorithm>
#include <stdexcept>

namespace lvsm {

MPoly ds_apply(const PlanarSystem& sys, const MPoly& p) {
  MPoly out(p.vars());
  for (const auto& [m, c] : p.terms()) {
    Frac dc = sys.tower.derive(c);
    if (!dc.is_zero()) out.add_term(m, dc);
  }
  out += sys.f * p.partial(sys.vars[0]);
  out += sys.g * p.partial(sys.vars[1]);
  return out;
}

InvariantResult invariant_check(const PlanarSystem& sys, const MPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("invariant_check: zero polynomial");
  auto [q, r] = ds_apply(sys, p).divrem(p);
  InvariantResult res;
  res.invariant = r.is_zero();
  if (res.invariant) {
    res.cofactor = q;
    if (!q.is_zero() && q.degree() + 1 > std::max<std::uint32_t>(sys.max_degree(), 1))
      throw std::logic_error("cofactor degree exceeds max(deg f, deg g) - 1");
  } else {
    res.remainder = r;
  }
  return res;
}

namespace {

void compositions(const std::vector<SymId>& vars, std::size_t i, std::uint32_t left, const Monomial& acc,
                  std::vector<Monomial>& out) {
  if (i + 1 == vars.size()) {
    out.push_back(acc * Monomial::var(vars[i], left));
    return;
  }
  for (std::uint32_t e = 0; e <= left; ++e) compositions(vars, i + 1, left - e, acc * Monomial::var(vars[i], e), out);
}

}  // namespace

std::vector<Monomial> monomials_up_to(const std::vector<SymId>& vars, std::uint32_t d) {
  std::vector<Monomial> out{Monomial()};
  for (std::uint32_t deg = 1; deg <= d; ++deg) {
    std::vector<Monomial> layer;
    compositions(vars, 0, deg, Monomial(), layer);
    std::sort(layer.begin(), layer.end(), GradedLex());
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::vector<const DarbouxFamily*> DarbouxCertificate::irreducible() const {
  std::vector<const DarbouxFamily*> out;
  for (const auto& f : families)
    if (!f.reducible) out.push_back(&f);
  return out;
}

namespace {

std::string monomial_tag(const Monomial& m, const VarOrder& order) {
  if (m.is_one()) return "1";
  std::string out;
  for (SymId v : order.vars())
    if (auto d = m.degree(v)) {
      out += symbol_name(v);
      if (d > 1) out += std::to_string(d);
    }
  return out;
}

SymId fresh(const std::string& base, const PlanarSystem& sys) {
  std::string name = base;
  while (sys.tower.declares(intern(name))) name += "_";
  return intern(name);
}

Poly lcm(const Poly& a, const Poly& b) { return *divide_exact(a * b, gcd(a, b)); }

// Splits a polynomial into coefficients of monomials in the given symbols.
std::map<Monomial, Poly, GradedLex> split_by(const Poly& p, const std::vector<SymId>& syms) {
  std::map<Monomial, Poly, GradedLex> out;
  for (const auto& [m, c] : p.terms()) out[m.restricted_to(syms)].add_term(m.excluding(syms), c);
  return out;
}

// Row-reduces kernel vectors over the constants so that pivots sit at the
// earliest ansatz columns.
std::vector<FracVector> echelon(std::vector<FracVector> rows, std::size_t cols) {
  rref(rows, cols);
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const FracVector& v) {
                              return std::all_of(v.begin(), v.end(), [](const Frac& x) { return x.is_zero(); });
                            }),
             rows.end());
  return rows;
}

// A family member obtained by setting all free constants to zero.
MPoly base_member(const DarbouxFamily& fam) {
  Frac f = fam.poly.to_frac();
  for (SymId l : fam.free_constants) f = f.substitute(l, Frac());
  return MPoly::from_frac(f, fam.poly.vars());
}

}  // namespace

DarbouxCertificate darboux_search(const PlanarSystem& sys, std::uint32_t max_degree, const std::vector<Frac>& basis,
                                  const DarbouxOptions& opts) {
  if (max_degree < 1) throw std::invalid_argument("degree bound must be at least 1");
  if (basis.empty()) throw std::invalid_argument("empty coefficient basis");
  DarbouxCertificate cert;
  cert.degree_bound = max_degree;
  cert.basis = basis;
  const auto& vars = sys.vars;
  VarOrder order(vars);
  std::set<SymId> main(vars.begin(), vars.end());
  for (const auto& b : basis) {
    if (!b.free_of(main)) throw std::invalid_argument("basis elements must be free of the variables");
    sys.tower.derive(b);  // throws if not expressible in the tower
  }

  // unknowns: printing order of monomials, then basis order
  auto monos = monomials_up_to(vars, max_degree);
  std::reverse(monos.begin(), monos.end());
  std::vector<std::pair<Monomial, std::size_t>> unknowns;
  for (const auto& m : monos)
    for (std::size_t k = 0; k < basis.size(); ++k) unknowns.emplace_back(m, k);
  for (const auto& [m, k] : unknowns) cert.ansatz.push_back(basis[k] * MPoly::from_poly(Poly::term(m, 1), vars).to_frac());

  std::uint32_t m = std::max<std::uint32_t>(sys.max_degree(), 1);
  cert.cofactor_monomials = monomials_up_to(vars, m - 1);
  MPoly q(vars);
  for (const auto& mu : cert.cofactor_monomials) {
    SymId s = fresh("q_" + monomial_tag(mu, order), sys);
    cert.cofactor_params.push_back(s);
    q.add_term(mu, Frac::symbol(s));
  }

  // column i: D_S(beta mu) - Q beta mu
  std::vector<MPoly> cols;
  for (const auto& [mu, k] : unknowns) {
    MPoly e(vars);
    e.add_term(mu, basis[k]);
    cols.push_back(ds_apply(sys, e) - q * e);
  }
  std::set<Monomial, GradedLex> rows_x;
  for (const auto& c : cols)
    for (const auto& [mu, v] : c.terms()) rows_x.insert(mu);
  std::vector<SymId> gens;
  for (const auto& [g, d] : sys.tower.generators()) gens.push_back(g);

  FracMatrix mat;
  for (const auto& mu : rows_x) {
    Poly l(1);
    std::vector<Frac> entries;
    for (const auto& c : cols) {
      entries.push_back(c.coefficient(mu));
      l = lcm(l, entries.back().den());
    }
    // constants are independent of the tower generators, so each
    // generator monomial gives its own equation
    std::map<Monomial, std::vector<Poly>, GradedLex> split;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      Poly cleared = entries[i].num() * *divide_exact(l, entries[i].den());
      for (auto& [gm, coeff] : split_by(cleared, gens)) {
        auto& row = split[gm];
        row.resize(entries.size());
        row[i] = coeff;
      }
    }
    for (auto& [gm, row] : split) {
      FracVector r;
      for (auto& p : row) r.emplace_back(p);
      mat.push_back(std::move(r));
    }
  }
  cert.equations = mat.size();
  cert.tree = parametric_kernel(mat, unknowns.size(), cert.cofactor_params, opts.kernel);
  if (cert.tree.exhausted) throw SearchExhausted("case split exceeded the node budget");

  // verification happens over a tower that knows the free constants
  PlanarSystem check = sys;
  for (SymId s : cert.cofactor_params) check.tower.add_parameter(s);

  std::vector<DarbouxFamily> found;
  for (std::size_t li = 0; li < cert.tree.leaves.size(); ++li) {
    const auto& leaf = cert.tree.leaves[li];
    if (leaf.status != LeafStatus::Solved) {
      cert.complete = false;
      continue;
    }
    if (leaf.kernel.empty()) continue;
    auto rows = echelon(leaf.kernel, unknowns.size());
    MPoly cof(vars);
    for (const auto& [mu, c] : q.terms()) cof.add_term(mu, leaf.conditions.apply(c));
    std::set<SymId> assigned;
    for (const auto& [s, v] : leaf.conditions.assignments) assigned.insert(s);
    std::vector<SymId> free_q;
    for (SymId s : cert.cofactor_params)
      if (!assigned.count(s)) free_q.push_back(s);

    auto to_poly = [&](const FracVector& v) {
      MPoly p(vars);
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) p.add_term(unknowns[i].first, v[i] * basis[unknowns[i].second]);
      return p;
    };
    bool any = false;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      MPoly lead = to_poly(rows[j]);
      if (lead.is_constant()) break;
      any = true;
      DarbouxFamily fam;
      fam.poly = lead;
      for (std::size_t k = j + 1; k < rows.size(); ++k) {
        SymId lam = fresh("lambda" + std::to_string(k - j), sys);
        check.tower.add_parameter(lam);
        fam.free_constants.push_back(lam);
        fam.poly -= to_poly(rows[k]) * Frac::symbol(lam);
      }
      fam.cofactor = cof;
      fam.free_cofactor_params = free_q;
      fam.leaf = static_cast<long>(li);
      auto res = invariant_check(check, fam.poly);
      if (!res.invariant || res.cofactor != cof)
        throw std::logic_error("darboux_search produced a pair that fails re-verification");
      // associates over K (e.g. z*X with z a unit) collapse to one monic form
      MPoly monic = fam.poly.monic();
      if (monic != fam.poly) {
        fam.poly = monic;
        fam.cofactor = invariant_check(check, monic).cofactor;
      }
      found.push_back(std::move(fam));
    }
    if (!any) ++cert.trivial_leaves;
  }

  std::vector<DarbouxFamily> unique;
  for (std::size_t i = 0; i < found.size(); ++i) {
    const auto& fam = found[i];
    bool dup = false;
    for (std::size_t j = 0; j < found.size() && !dup; ++j) {
      if (j == i) continue;
      const auto& other = found[j];
      if (other.poly == fam.poly) dup = j < i;
      else if (fam.free_constants.empty() && !other.free_constants.empty()) dup = base_member(other) == fam.poly;
    }
    if (!dup) unique.push_back(fam);
  }
  found = std::move(unique);
  std::stable_sort(found.begin(), found.end(),
                   [](const DarbouxFamily& a, const DarbouxFamily& b) { return a.poly.degree() < b.poly.degree(); });
  for (std::size_t i = 0; i < found.size(); ++i) {
    auto& fam = found[i];
    if (!fam.free_constants.empty() || !fam.free_cofactor_params.empty()) continue;
    MPoly rest = fam.poly;
    for (std::size_t j = 0; j < i; ++j) {
      const auto& g = found[j];
      if (g.reducible || !g.free_constants.empty() || !g.free_cofactor_params.empty()) continue;
      if (g.poly.degree() >= fam.poly.degree()) continue;
      while (!rest.is_constant()) {
        auto [qq, r] = rest.divrem(g.poly);
        if (!r.is_zero()) break;
        fam.factors.push_back(j);
        rest = qq;
      }
    }
    fam.reducible = !fam.factors.empty();
  }
  cert.families = std::move(found);
  return cert;
}

}  // namespace lvsm
