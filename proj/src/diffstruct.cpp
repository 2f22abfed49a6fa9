#include "lvsm/diffstruct.hpp"

#include <algorithm>

namespace lvsm {

DiffTower DiffTower::time(const std::string& t) {
  DiffTower tw;
  tw.add_generator(intern(t), Frac(1));
  return tw;
}

void DiffTower::add_parameter(SymId p) { params_.insert(p); }

void DiffTower::add_generator(SymId g, const Frac& derivative) {
  if (declares(g)) throw std::invalid_argument("generator '" + symbol_name(g) + "' declared twice");
  gens_.emplace_back(g, Frac());
  for (SymId s : derivative.symbols())
    if (!declares(s)) throw UndeclaredSymbol(symbol_name(s));
  gens_.back().second = derivative;
}

void DiffTower::add_indeterminate(SymId a) { indets_.insert(unprimed(a)); }

bool DiffTower::is_generator(SymId s) const {
  return std::any_of(gens_.begin(), gens_.end(), [&](const auto& g) { return g.first == s; });
}

bool DiffTower::declares(SymId s) const {
  return params_.count(s) || is_generator(s) || indets_.count(unprimed(s));
}

Frac DiffTower::derivative_of(SymId s) const {
  if (params_.count(s)) return Frac();
  for (const auto& [g, d] : gens_)
    if (g == s) return d;
  if (indets_.count(unprimed(s))) return Frac::symbol(prime(s));
  throw UndeclaredSymbol(symbol_name(s));
}

Frac DiffTower::derive(const Frac& e) const {
  Frac out;
  for (SymId s : e.symbols()) {
    Frac ds = derivative_of(s);
    if (!ds.is_zero()) out += e.derivative(s) * ds;
  }
  return out;
}

void DiffTower::substitute(SymId p, const Frac& value) {
  for (auto& [g, d] : gens_) d = d.substitute(p, value);
}

Frac derive(const Frac& e, const DiffTower& tower) { return tower.derive(e); }

Frac derive_system(const Frac& e, const PlanarSystem& sys) {
  Frac out;
  for (SymId s : e.symbols()) {
    if (s == sys.vars[0] || s == sys.vars[1]) {
      out += e.derivative(s) * sys.field(s).to_frac();
    } else {
      Frac ds = sys.tower.derivative_of(s);
      if (!ds.is_zero()) out += e.derivative(s) * ds;
    }
  }
  return out;
}

SymbolTable PlanarSystem::symbols() const {
  SymbolTable t;
  t.vars = vars;
  t.declared.insert(vars.begin(), vars.end());
  t.declared.insert(tower.parameters().begin(), tower.parameters().end());
  for (const auto& [g, d] : tower.generators()) t.declared.insert(g);
  return t;
}

namespace {

MPoly substitute(const MPoly& p, SymId s, const Frac& v) {
  return MPoly::from_frac(p.to_frac().substitute(s, v), p.vars());
}

}  // namespace

PlanarSystem PlanarSystem::from_spec(const SystemSpec& spec, const std::map<std::string, std::string>& overrides) {
  PlanarSystem sys;
  sys.name = spec.name;
  SymbolTable table = spec.symbols();
  sys.vars = table.vars;
  for (const auto& p : spec.params) sys.tower.add_parameter(intern(p));
  for (const auto& [g, e] : spec.tower) sys.tower.add_generator(intern(g), parse_ratfunc(e, table));
  sys.f = parse_poly(spec.fprime.at(spec.vars[0]), table);
  sys.g = parse_poly(spec.fprime.at(spec.vars[1]), table);
  for (const auto& d : spec.nondegenerate) sys.nondegenerate.push_back(parse_poly(d, table));
  for (const auto& [name, expr] : overrides) {
    if (std::find(spec.params.begin(), spec.params.end(), name) == spec.params.end())
      throw SpecError("override for undeclared parameter '" + name + "'");
    Frac v = parse_ratfunc(expr, SymbolTable({}, spec.params));
    SymId p = intern(name);
    sys.f = substitute(sys.f, p, v);
    sys.g = substitute(sys.g, p, v);
    for (auto& d : sys.nondegenerate) d = substitute(d, p, v);
    sys.tower.substitute(p, v);
  }
  if (sys.f.is_zero() && sys.g.is_zero()) throw SpecError("system is identically zero");
  return sys;
}

PlanarSystem PlanarSystem::make(const std::string& f, const std::string& g, const std::vector<std::string>& params,
                                const std::vector<std::string>& vars) {
  SystemSpec spec;
  spec.vars = vars;
  spec.params = params;
  spec.fprime[vars[0]] = f;
  spec.fprime[vars[1]] = g;
  return from_spec(spec);
}

void LogLinearExpr::add_log(const Frac& coeff, const Frac& arg) {
  if (arg.is_zero()) throw std::invalid_argument("log of zero");
  if (coeff.is_zero()) return;
  for (auto it = logs.begin(); it != logs.end(); ++it) {
    if (it->arg == arg) {
      it->coeff += coeff;
      if (it->coeff.is_zero()) logs.erase(it);
      return;
    }
  }
  logs.push_back({coeff, arg});
}

std::string LogLinearExpr::to_string(const VarOrder& order) const {
  std::string out = rational.is_zero() ? "" : format_frac(rational, order);
  for (const auto& [c, a] : logs) {
    std::string arg = "log(" + format_frac(a, order) + ")";
    std::string cs = format_frac(c, order);
    bool neg = false;
    if (c.num().size() == 1 && sgn(c.num().leading_coefficient()) < 0) {
      neg = true;
      cs = format_frac(-c, order);
    }
    bool simple = c.den() == Poly(1) && c.num().size() == 1;
    std::string term = cs == "1" ? arg : (simple ? cs : "(" + cs + ")") + "*" + arg;
    if (out.empty())
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

Frac loglinear_derive(const LogLinearExpr& h, const PlanarSystem& sys) {
  Frac out = derive_system(h.rational, sys);
  for (const auto& [c, a] : h.logs) {
    if (!derive_system(c, sys).is_zero()) throw std::invalid_argument("log coefficient is not a constant");
    out += c * derive_system(a, sys) / a;
  }
  return out;
}

}  // namespace lvsm
