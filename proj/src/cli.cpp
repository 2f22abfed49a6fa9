#include "lvsm/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <regex>
#include <set>
#include <sstream>

#include "lvsm/brestovski.hpp"
#include "lvsm/darboux.hpp"
#include "lvsm/puiseux.hpp"

namespace lvsm {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Report {
  json result = json::object();
  std::vector<std::string> warnings;
  int code = 0;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

// ---- parsing helpers

using Overrides = std::map<std::string, std::string>;

Overrides parse_sets(const std::vector<std::string>& sets) {
  Overrides out;
  for (const auto& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects name=expr, got '" + s + "'");
    std::string name = trim(s.substr(0, eq)), expr = trim(s.substr(eq + 1));
    if (name.empty() || expr.empty()) throw UsageError("--set expects name=expr, got '" + s + "'");
    if (!out.emplace(name, expr).second) throw UsageError("parameter '" + name + "' set twice");
  }
  return out;
}

PlanarSystem load(const std::string& name, const Overrides& sets) {
  try {
    return PlanarSystem::from_spec(load_system(name), sets);
  } catch (const SpecError& e) {
    throw SpecError("system '" + name + "': " + e.what());
  } catch (const ParseError& e) {
    throw SpecError("system '" + name + "': " + e.what());
  }
}

void collect_symbols(const ExprAst& a, std::set<std::string>& out) {
  if (a.kind == ExprAst::Kind::Symbol) out.insert(a.name);
  for (const auto& c : a.children) collect_symbols(c, out);
}

// Every identifier in the text is declared; `vars` become main variables.
Frac parse_free(const std::string& text, const std::vector<std::string>& vars = {}) {
  std::set<std::string> names;
  collect_symbols(parse_expr(text), names);
  SymbolTable t(vars, {});
  for (const auto& n : names) t.declare(n);
  return parse_ratfunc(text, t);
}

double numeric_value(const std::string& raw) {
  std::string text = trim(raw);
  static const std::regex sqrt_re(R"(sqrt\((.*)\))");
  std::smatch m;
  if (std::regex_match(text, m, sqrt_re)) {
    double v = numeric_value(m[1].str());
    if (v < 0) throw UsageError("sqrt of a negative number in '" + text + "'");
    return std::sqrt(v);
  }
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  Frac f;
  try {
    f = parse_ratfunc(text, SymbolTable());
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (!f.is_constant()) throw UsageError("not a number: '" + text + "'");
  return f.constant_value().get_d();
}

ParamValues parse_params(const std::vector<std::string>& items) {
  ParamValues out;
  for (const auto& item : items)
    for (const auto& kv : split(item, ',')) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw UsageError("--params expects name=value, got '" + kv + "'");
      std::string name = trim(kv.substr(0, eq));
      if (!out.emplace(name, numeric_value(kv.substr(eq + 1))).second)
        throw UsageError("parameter '" + name + "' given twice");
    }
  return out;
}

State parse_ic(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() != 2) throw UsageError("--ic expects x0,y0, got '" + text + "'");
  return {numeric_value(parts[0]), numeric_value(parts[1])};
}

// ---- rendering helpers

std::string fmt(const Frac& f, const VarOrder& order = {}) { return format_frac(f, order); }

json conditions_json(const CaseConditions& c, const VarOrder& order) {
  json j = json::array();
  for (const auto& [q, v] : c.assignments) j.push_back(symbol_name(q) + " = " + fmt(v, order));
  for (const auto& p : c.unresolved) j.push_back(format_poly(p, order) + " = 0 (unresolved)");
  for (const auto& p : c.disequations) {
    Frac v = c.apply(Frac(p));
    if (v.is_constant() && !v.is_zero()) continue;  // settled by the assignments
    j.push_back(fmt(v, order) + " != 0");
  }
  return j;
}

json verdict_json(const AlgSolVerdict& v, SymId t) {
  VarOrder order({t});
  json j;
  j["verdict"] = to_string(v.kind);
  j["reason"] = v.reason;
  if (!v.witness.empty()) {
    json w = json::array();
    for (const auto& [p, e] : v.witness) w.push_back({{"factor", fmt(p.to_frac(), order)}, {"exponent", format_rational(e)}});
    j["witness"] = w;
  }
  if (v.solution) j["solution"] = fmt(*v.solution, order);
  return j;
}

json ode_json(const LinearOdeProblem& p, const std::string& unknown) {
  VarOrder order({p.var});
  std::string x = symbol_name(p.var);
  json j;
  j["equation"] = "d" + unknown + "/d" + x + " = (" + fmt(p.F, order) + ")*" + unknown +
                  (p.c.is_zero() ? "" : " + (" + fmt(p.c, order) + ")");
  j["F"] = fmt(p.F, order);
  j["c"] = fmt(p.c, order);
  return j;
}

json relation_json(const RelationReport& r) {
  json j;
  j["monomials"] = r.monomials;
  j["samples"] = r.samples;
  j["spectrum"] = r.spectrum;
  j["ratio"] = r.ratio;
  j["no_relation_threshold"] = r.no_relation_threshold;
  j["relation_threshold"] = r.relation_threshold;
  j["verdict"] = to_string(r.verdict);
  j["resampled"] = r.resampled;
  return j;
}

json ratio_json(const RatioReport& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["epsilon"] = r.epsilon;
  j["variation"] = r.variation;
  j["samples"] = r.samples;
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

void render(const json& j, std::ostream& out, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        out << pad << k << ":\n";
        render(v, out, indent + 2);
      } else {
        out << pad << k << ": " << (v.is_structured() ? "(none)" : scalar(v)) << "\n";
      }
    }
  } else if (j.is_array()) {
    bool flat = std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_primitive(); });
    if (flat && j.size() > 8 && std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_number(); })) {
      out << pad;
      for (std::size_t i = 0; i < j.size(); ++i) out << (i ? " " : "") << j[i].dump();
      out << "\n";
      return;
    }
    for (const auto& v : j) {
      if (v.is_structured()) {
        out << pad << "-\n";
        render(v, out, indent + 2);
      } else {
        out << pad << "- " << scalar(v) << "\n";
      }
    }
  } else {
    out << pad << scalar(j) << "\n";
  }
}

// ---- subcommands

Report check_invariant(const std::string& spec, const std::string& poly, const Overrides& sets) {
  Report r;
  auto sys = load(spec, sets);
  MPoly p = parse_poly(poly, sys.symbols());
  auto res = invariant_check(sys, p);
  r.result["system"] = sys.name;
  r.result["poly"] = format_poly(p);
  r.result["invariant"] = res.invariant;
  if (res.invariant) {
    r.result["cofactor"] = format_poly(res.cofactor);
  } else {
    r.result["remainder"] = format_poly(res.remainder);
    r.code = 1;
  }
  return r;
}

json families_json(const DarbouxCertificate& cert, const PlanarSystem& sys) {
  json fams = json::array();
  for (const auto& f : cert.families) {
    json j;
    j["poly"] = format_poly(f.poly);
    j["cofactor"] = format_poly(f.cofactor);
    json fc = json::array();
    for (SymId s : f.free_constants) fc.push_back(symbol_name(s));
    j["free_constants"] = fc;
    json fq = json::array();
    for (SymId s : f.free_cofactor_params) fq.push_back(symbol_name(s));
    j["free_cofactor_params"] = fq;
    j["reducible"] = f.reducible;
    if (f.leaf >= 0)
      j["conditions"] = conditions_json(cert.tree.leaves[static_cast<std::size_t>(f.leaf)].conditions, sys.order());
    fams.push_back(j);
  }
  return fams;
}

Report search_darboux(const std::string& spec, unsigned max_degree, const std::string& basis_text,
                      std::size_t budget, const Overrides& sets) {
  Report r;
  auto sys = load(spec, sets);
  std::vector<Frac> basis;
  if (basis_text.empty()) {
    basis = {Frac(1)};
  } else {
    for (const auto& b : split(basis_text, ',')) basis.push_back(parse_ratfunc(b, sys.symbols()));
  }
  DarbouxOptions opts;
  opts.kernel.node_budget = budget;
  auto cert = darboux_search(sys, max_degree, basis, opts);
  r.result["system"] = sys.name;
  r.result["max_degree"] = max_degree;
  json bj = json::array();
  for (const auto& b : basis) bj.push_back(fmt(b, sys.order()));
  r.result["basis"] = bj;
  r.result["unknowns"] = cert.ansatz.size();
  r.result["cofactor_unknowns"] = cert.cofactor_params.size();
  r.result["equations"] = cert.equations;
  r.result["case_nodes"] = cert.tree.nodes;
  r.result["leaves"] = cert.tree.leaves.size();
  r.result["trivial_leaves"] = cert.trivial_leaves;
  r.result["complete"] = cert.complete;
  json irr = json::array();
  for (const auto* f : cert.irreducible()) irr.push_back(format_poly(f->poly));
  r.result["irreducible"] = irr;
  r.result["families"] = families_json(cert, sys);
  if (!cert.complete) {
    r.warnings.push_back("some case-split leaves are unresolved; the list of families may be incomplete");
    r.code = 1;
  }
  return r;
}

Report ode_alg_test(const std::string& coeff, const std::string& inhom, const std::string& var) {
  Report r;
  SymId t = intern(var);
  LinearOdeProblem p{t, parse_free(coeff, {var}), inhom.empty() ? Frac() : parse_free(inhom, {var})};
  auto v = decide(p);
  r.result["problem"] = ode_json(p, "y");
  r.result["decision"] = verdict_json(v, t);
  if (v.kind != VerdictKind::HasAlgebraic) r.code = 1;
  return r;
}

Report lemma_check(const std::string& family, const std::string& q, const std::string& c1, const std::string& c2,
                   const std::string& var) {
  Report r;
  LemmaFamily fam;
  if (family == "classical") {
    fam = LemmaFamily::Classical;
  } else if (family == "twod") {
    fam = LemmaFamily::TwoD;
  } else {
    throw UsageError("--family must be classical or twod");
  }
  SymId t = intern(var);
  Frac fq = parse_free(q, {var}), f1 = parse_free(c1, {var}), f2 = parse_free(c2, {var});
  auto v = lemma_family_check(fq, f1, f2, fam, t);
  r.result["family"] = family;
  r.result["problem"] = ode_json({t, fq / Frac::symbol(t) + f1, f2}, "v");
  r.result["decision"] = verdict_json(v, t);
  if (fam == LemmaFamily::Classical && f1.is_zero() && !f2.is_zero())
    r.warnings.push_back("discrepancy: the classical lemma is stated without c1 != 0, but c1 = 0 admits the rational "
                         "solution c2*t/(1 - q)");
  if (v.kind != VerdictKind::HasAlgebraic) r.code = 1;
  return r;
}

struct PuiseuxArgs {
  std::string spec;
  std::string exp_case;
  std::string lead;
  std::string expand, in;
  std::string coeff;
  std::string relation, forcing;
  unsigned depth = 1, terms = 8, ramification = 1;
};

json constraint_set_json(const ConstraintSet& cs, const PlanarSystem& sys) {
  VarOrder order = sys.order();
  json j;
  std::string lead = symbol_name(cs.lead);
  j["case"] = cs.exponent_case.describe(lead);
  j["series_var"] = symbol_name(cs.series_var);
  j["assumptions"] = cs.assumptions;
  json cons = json::array();
  for (std::size_t i = 0; i < cs.constraints.size(); ++i) {
    const auto& c = cs.constraints[i];
    json cj;
    cj["exponent"] = c.exponent_text;
    cj["equation"] = c.text;
    cj["residual"] = fmt(c.residual, order);
    if (cs.coefficient_var && i < cs.coefficients.size()) {
      SymId b = cs.coefficients[i];
      try {
        auto ode = constraint_to_ode(cs, i, b);
        json oj = ode_json(ode, symbol_name(b));
        oj["decision"] = verdict_json(decide(ode), ode.var);
        cj["ode"] = oj;
      } catch (const NotLinear& e) {
        cj["ode"] = nullptr;
        cj["ode_note"] = e.what();
      }
    }
    cons.push_back(cj);
  }
  j["constraints"] = cons;
  j["determined"] = cs.determined;
  if (!cs.stop_reason.empty()) j["stop_reason"] = cs.stop_reason;
  return j;
}

Report puiseux_constraints(const PuiseuxArgs& a, const Overrides& sets) {
  Report r;
  auto sys = load(a.spec, sets);
  std::vector<std::string> vars{symbol_name(sys.vars[0]), symbol_name(sys.vars[1])};
  std::string lead = a.lead;
  if (lead.empty() && !a.exp_case.empty()) {
    static const std::regex ident(R"([A-Za-z_][A-Za-z0-9_]*)");
    std::smatch m;
    if (std::regex_search(a.exp_case, m, ident)) lead = m.str();
  }
  if (lead.empty()) lead = "r";
  std::vector<std::string> cases;
  if (a.exp_case.empty()) {
    cases = {lead + "<0", lead + "=0", lead + ">0"};
  } else {
    cases = {a.exp_case};
  }
  bool relation = !a.relation.empty();
  if (!relation && !a.forcing.empty()) throw UsageError("--forcing needs --relation");

  AnsatzSpec spec;
  spec.lead = lead;
  spec.depth = a.depth;
  spec.terms = a.terms;
  spec.ramification = a.ramification;
  if (relation) {
    spec.stage = AnsatzSpec::Stage::Relation;
    spec.series_var = a.in.empty() ? vars[1] : a.in;
    spec.coeff = a.coeff.empty() ? "b" : a.coeff;
    spec.m = parse_free(a.relation, vars);
    if (!a.forcing.empty()) spec.forcing = parse_free(a.forcing, vars);
    if (!a.expand.empty()) throw UsageError("--expand applies to the expansion stage only");
  } else {
    spec.expanded = a.expand.empty() ? vars[0] : a.expand;
    spec.series_var = a.in.empty() ? (spec.expanded == vars[0] ? vars[1] : vars[0]) : a.in;
    spec.coeff = a.coeff.empty() ? "a" : a.coeff;
  }
  r.result["system"] = sys.name;
  r.result["stage"] = relation ? "relation" : "expansion";
  if (relation) {
    r.result["side_relation"] = "a' = (" + fmt(spec.m, sys.order()) + ")*a" +
                                (spec.forcing.is_zero() ? "" : " + (" + fmt(spec.forcing, sys.order()) + ")");
  } else {
    r.result["expanded"] = spec.expanded;
  }
  json runs = json::array();
  for (const auto& c : cases) {
    spec.exponent_case = ExponentCase::parse(c, lead);
    runs.push_back(constraint_set_json(ansatz_constraints(sys, spec), sys));
  }
  r.result["cases"] = runs;
  return r;
}

Report first_integral_cmd(const std::string& spec_name, Overrides sets) {
  Report r;
  SystemSpec spec = load_system(spec_name);
  for (const char* p : {"a", "c"}) {
    if (std::find(spec.params.begin(), spec.params.end(), p) != spec.params.end() && !sets.count(p)) {
      sets[p] = "1";
      r.warnings.push_back(std::string("parameter ") + p + " set to 1 (normalized form x' = x(y + b), y' = y(x + d))");
    }
  }
  auto sys = load(spec_name, sets);
  VarOrder order = sys.order();
  auto h = first_integral(sys);
  r.result["system"] = sys.name;
  r.result["H"] = h.to_string(order);
  r.result["dH/dt"] = fmt(loglinear_derive(h, sys), order);
  r.result["conserved"] = true;
  r.result["H_in_z"] = first_integral_zform(sys);
  try {
    auto bf = to_brestovski(sys);
    VarOrder zo({prime(bf.z), bf.z});
    json j;
    j["z"] = fmt(bf.z_of_xy, order);
    j["z'"] = fmt(bf.zprime_of_xy, order);
    std::string eq = symbol_name(bf.z) + "' = ";
    for (std::size_t i = 0; i < bf.terms.size(); ++i) {
      const auto& [c, G] = bf.terms[i];
      std::string g = fmt(G, zo);
      eq += (i ? " + " : "") + std::string("(") + fmt(c, order) + ")*(" + g + ")'/(" + g + ")";
    }
    j["equation"] = eq;
    j["identities"] = bf.identities;
    j["coefficient_ratio"] = bf.coefficient_status;
    r.result["brestovski"] = j;
  } catch (const Degenerate& e) {
    r.result["brestovski"] = nullptr;
    r.warnings.push_back(e.what());
  }
  return r;
}

struct NumericArgs {
  std::string spec;
  std::vector<std::string> params;
  std::vector<std::string> ics;
  double horizon = 1.0;
  double rtol = 1e-10;
  std::size_t samples = 200;
  std::string out;
  unsigned max_degree = 2;
};

json trajectory_summary(const Trajectory& t) {
  json j;
  j["ic"] = {t.ic[0], t.ic[1]};
  j["termination"] = to_string(t.reason);
  j["t_end"] = t.t.back();
  j["final"] = {t.state.back()[0], t.state.back()[1]};
  j["samples"] = t.t.size();
  j["accepted_steps"] = t.accepted;
  j["rejected_steps"] = t.rejected;
  return j;
}

void termination_warning(const Trajectory& t, Report& r) {
  if (t.reason == Termination::BlowUpGuard)
    r.warnings.push_back("trajectory from (" + std::to_string(t.ic[0]) + ", " + std::to_string(t.ic[1]) +
                         ") stopped by the blow-up guard at t = " + std::to_string(t.t.back()));
  if (t.reason == Termination::StepUnderflow)
    r.warnings.push_back("step size underflow at t = " + std::to_string(t.t.back()));
}

Report integrate_cmd(const NumericArgs& a, const Overrides& sets) {
  Report r;
  auto sys = load(a.spec, sets);
  if (a.ics.size() != 1) throw UsageError("integrate takes exactly one --ic");
  IntegrateOptions opts;
  opts.rtol = a.rtol;
  opts.samples = a.samples;
  auto params = parse_params(a.params);
  auto tr = integrate(sys, params, parse_ic(a.ics[0]), a.horizon, opts);
  r.result["system"] = sys.name;
  r.result["params"] = params;
  r.result["horizon"] = a.horizon;
  r.result["rtol"] = tr.rtol;
  r.result["atol"] = tr.atol;
  r.result["trajectory"] = trajectory_summary(tr);
  termination_warning(tr, r);
  try {
    auto h = first_integral(sys);
    r.result["first_integral"] = {{"H", h.to_string(sys.order())}, {"relative_drift", conservation_drift(h, tr)}};
  } catch (const std::invalid_argument&) {
    // no closed-form integral for this system
  }
  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!f) throw UsageError("cannot write '" + a.out + "'");
    write_csv(tr, f);
    r.result["csv"] = a.out;
  } else {
    json t = json::array(), x = json::array(), y = json::array();
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
      t.push_back(tr.t[i]);
      x.push_back(tr.state[i][0]);
      y.push_back(tr.state[i][1]);
    }
    r.result["samples"] = {{"t", t}, {"x", x}, {"y", y}};
  }
  return r;
}

Report independence_probe(const NumericArgs& a, const Overrides& sets) {
  Report r;
  auto sys = load(a.spec, sets);
  if (a.ics.size() < 2) throw UsageError("independence-probe needs at least two --ic");
  IntegrateOptions opts;
  opts.rtol = a.rtol;
  opts.samples = a.samples;
  auto params = parse_params(a.params);
  std::vector<Trajectory> trajs;
  json tj = json::array();
  for (const auto& ic : a.ics) {
    trajs.push_back(integrate(sys, params, parse_ic(ic), a.horizon, opts));
    tj.push_back(trajectory_summary(trajs.back()));
    termination_warning(trajs.back(), r);
  }
  r.result["system"] = sys.name;
  r.result["params"] = params;
  r.result["horizon"] = a.horizon;
  r.result["trajectories"] = tj;
  auto rel = relation_probe(trajs, a.max_degree);
  r.result["relation_probe"] = relation_json(rel);
  auto rat = ratio_probe(trajs[0], trajs[1]);
  r.result["ratio_probe"] = ratio_json(rat);
  if (trajs.size() > 2) r.warnings.push_back("ratio_probe compares the first two trajectories only");
  bool evidence = rel.verdict == RelationVerdict::NoRelationEvidence && rat.verdict == RatioVerdict::IndependentEvidence;
  r.result["independence_evidence"] = evidence;
  if (!evidence) r.code = 1;
  return r;
}

// ---- demo

struct Demo {
  json steps = json::array();
  bool all_ok = true;

  void add(const std::string& step, const std::string& lemma, json detail, bool ok) {
    json j;
    j["step"] = step;
    j["instantiates"] = lemma;
    j["reproduced"] = ok;
    j["detail"] = std::move(detail);
    steps.push_back(std::move(j));
    all_ok = all_ok && ok;
  }
};

Frac symbolic(const std::string& s) { return parse_free(s, {"X", "Y"}); }

bool only_monomials(const DarbouxCertificate& cert, json& detail) {
  std::set<std::string> irr;
  for (const auto* f : cert.irreducible()) irr.insert(format_poly(f->poly));
  bool ok = irr == std::set<std::string>{"X", "Y"};
  for (const auto& f : cert.families) ok = ok && f.poly.terms().size() == 1;
  detail["irreducible"] = irr;
  detail["leaves"] = cert.tree.leaves.size();
  detail["trivial_leaves"] = cert.trivial_leaves;
  detail["complete"] = cert.complete;
  return ok && cert.complete;
}

void xy_step(Demo& demo, const std::string& preset, const std::string& expected, const std::string& lemma) {
  auto sys = load(preset, {});
  auto res = invariant_check(sys, parse_poly("X*Y", sys.symbols()));
  json d;
  d["system"] = preset;
  d["poly"] = "X*Y";
  d["cofactor"] = res.invariant ? format_poly(res.cofactor) : "(not invariant)";
  d["expected"] = expected;
  demo.add("X*Y is a Darboux polynomial", lemma, d,
           res.invariant && res.cofactor.to_frac() == symbolic(expected));
}

void normalization_step(Demo& demo, LvFamily family) {
  auto sym = [](const char* n) { return Frac::symbol(intern(n)); };
  auto [norm, rec] = normalize_system(family, sym("a"), sym("b"), sym("c"), sym("d"), {"a", "b", "c", "d"});
  json d;
  d["x_scale"] = fmt(rec.x_scale);
  d["y_scale"] = fmt(rec.y_scale);
  d["time_scale"] = fmt(rec.time_scale);
  d[rec.ratio_name] = fmt(rec.ratio);
  d["normalized"] = {"X' = " + format_poly(norm.f), "Y' = " + format_poly(norm.g)};
  demo.add("normalization to one parameter", "rescaling X = (c/b) x, Y = (a/b) y, tau = b t", d, true);
}

std::vector<std::string> expansion_residuals(const PlanarSystem& sys, json& detail) {
  std::vector<std::string> out;
  AnsatzSpec spec;
  spec.expanded = "X";
  spec.series_var = "Y";
  for (auto c : {ExponentCase::negative(), ExponentCase::zero(), ExponentCase::positive()}) {
    spec.exponent_case = c;
    auto cs = ansatz_constraints(sys, spec);
    std::string eq = cs.constraints.empty() ? "(none)" : cs.constraints[0].text;
    detail[c.describe("r")] = eq;
    out.push_back(cs.constraints.empty() ? "" : fmt(cs.constraints[0].residual, sys.order()));
  }
  return out;
}

bool residuals_match(const std::vector<std::string>& got, const std::vector<std::string>& want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i)
    if (got[i].empty() || parse_free(got[i], {"X", "Y"}) != parse_free(want[i], {"X", "Y"})) return false;
  return true;
}

// Runs the relation stage and pipes the first constraint into the decision procedures.
std::pair<LinearOdeProblem, AlgSolVerdict> relation_step(const PlanarSystem& sys, const std::string& lead,
                                                        const ExponentCase& c, const std::string& m,
                                                        const std::string& forcing, json& detail) {
  AnsatzSpec spec;
  spec.stage = AnsatzSpec::Stage::Relation;
  spec.series_var = "Y";
  spec.lead = lead;
  spec.coeff = "b";
  spec.exponent_case = c;
  spec.m = symbolic(m);
  if (!forcing.empty()) spec.forcing = symbolic(forcing);
  auto cs = ansatz_constraints(sys, spec);
  if (cs.constraints.empty()) throw std::logic_error("relation stage produced no constraint");
  auto ode = constraint_to_ode(cs, 0, cs.coefficients.at(0));
  auto v = decide(ode);
  detail["case"] = c.describe(lead);
  detail["side_relation"] = "a' = (" + m + ")*a" + (forcing.empty() ? "" : " + (" + forcing + ")");
  detail["constraint"] = cs.constraints[0].text;
  detail["ode"] = ode_json(ode, "b0");
  detail["decision"] = verdict_json(v, ode.var);
  return {ode, v};
}

Report demo_classical() {
  Report r;
  Demo demo;
  xy_step(demo, "lv-classical", "a*Y + c*X + b + d", "invariant curve XY = 0 with its cofactor");
  normalization_step(demo, LvFamily::Classical);

  {
    json d;
    auto sys = load("lv-classical", {{"a", "1"}, {"c", "1"}});
    auto cert = darboux_search(sys, 2);
    bool ok = only_monomials(cert, d);
    d["system"] = "LV_{1,b,1,d}, b and d independent";
    demo.add("no invariant curves up to degree 2", "bounded-degree shadow of the missing invariant curves", d, ok);
  }
  {
    json d;
    auto sys = load("lv-degenerate", {});
    auto cert = darboux_search(sys, 1);
    bool ok = false;
    for (const auto* f : cert.irreducible())
      if (f->poly.to_frac() == symbolic("X - Y") && f->cofactor.to_frac() == symbolic("b")) ok = true;
    json irr = json::array();
    for (const auto* f : cert.irreducible()) irr.push_back(format_poly(f->poly) + " (cofactor " + format_poly(f->cofactor) + ")");
    d["irreducible"] = irr;
    demo.add("degenerate case d = b", "z = X - Y satisfies z' = b z", d, ok);
  }
  {
    json d;
    auto sys = load("lv-degenerate-tower", {});
    auto cert = darboux_search(sys, 1, {Frac(1), Frac::symbol(intern("z"))});
    bool ok = false;
    json fams = json::array();
    for (const auto& f : cert.families) {
      fams.push_back(format_poly(f.poly) + " (cofactor " + format_poly(f.cofactor) + ")");
      if (f.free_constants.size() != 1) continue;
      Frac rest = f.poly.to_frac() - symbolic("X - Y");
      Frac k = rest / (Frac::symbol(f.free_constants[0]) * Frac::symbol(intern("z")));
      if (k.is_constant() && !k.is_zero()) ok = true;
    }
    d["families"] = fams;
    demo.add("degenerate case over z' = b z", "family X - Y - lambda z of invariant curves", d, ok);
  }

  auto norm = load("lv-classical-normalized", {});
  {
    json d;
    auto got = expansion_residuals(norm, d);
    bool ok = residuals_match(got, {"r*a0^2", "a0' - a0", "a0' - (1 - r*alpha)*a0"});
    demo.add("leading exponent of X as a series in Y", "classical leading-exponent lemma", d, ok);
  }
  {
    json d = json::object(), kpos, kneg;
    auto [o1, v1] = relation_step(norm, "k", ExponentCase::positive(), "m", "", kpos);
    auto [o2, v2] = relation_step(norm, "k", ExponentCase::negative(), "m", "", kneg);
    d["k>0"] = kpos;
    d["k<0"] = kneg;
    Frac want = symbolic("(m - k*alpha)/X - k");
    bool ok = o1.F == want && o2.F == want && v1.kind == VerdictKind::NoAlgebraic && v2.kind == VerdictKind::NoAlgebraic;
    demo.add("second stage at k != 0", "algebraic-solution criterion (nonzero polynomial part)", d, ok);
  }
  {
    json d;
    auto [o, v] = relation_step(norm, "k", ExponentCase::zero(), "m", "", d);
    demo.add("second stage at k = 0", "algebraic-solution criterion (residue m)", d, o.F == symbolic("m/X"));
  }
  {
    json d;
    auto [o, v] = relation_step(norm, "s", ExponentCase::between(0, 1), "1", "-beta*X*Y", d);
    bool ok = o.F == symbolic("(1 - alpha*s)/X - s") && o.c.is_zero() && v.kind == VerdictKind::NoAlgebraic;
    demo.add("case 1: 0 < s < 1", "algebraic-solution criterion", d, ok);
  }
  {
    json d;
    auto [o, v] = relation_step(norm, "s", ExponentCase::value(1), "1", "-beta*X*Y", d);
    bool ok = o.F == symbolic("(1 - alpha)/X - 1") && o.c == symbolic("-beta") && v.kind == VerdictKind::NoAlgebraic;
    demo.add("case 2: s = 1", "classical inhomogeneous lemma v' = (q/t + c1) v + c2", d, ok);
  }
  {
    json d;
    auto sys = load("lv-classical", {{"a", "1"}, {"c", "1"}});
    auto bf = to_brestovski(sys);
    auto h = first_integral(sys);
    d["z"] = fmt(bf.z_of_xy, sys.order());
    d["identities"] = bf.identities;
    d["H"] = h.to_string(sys.order());
    d["H_in_z"] = first_integral_zform(sys);
    d["coefficient_ratio"] = bf.coefficient_status;
    demo.add("Brestovski form and first integral", "F' = sum a_i G_i'/G_i with H = F - sum a_i log G_i", d,
             loglinear_derive(h, sys).is_zero());
  }
  {
    json d;
    auto sym = qratio_check(Frac::symbol(intern("b")), Frac::symbol(intern("d")));
    auto num = qratio_check(1.0, std::sqrt(2.0));
    d["d/b symbolic"] = to_string(sym.kind);
    d["d/b = sqrt(2)"] = to_string(num.kind);
    bool ok = sym.kind == QRatioKind::IrrationalGeneric && num.kind == QRatioKind::Unknown;
    demo.add("rationality of d/b", "Q-linear independence of the Brestovski coefficients", d, ok);
  }

  r.warnings.push_back("discrepancy: the second-stage coefficient is printed as (m - r*alpha)/x - k in the source; the "
                       "constraint gives (m - k*alpha)/x - k");
  r.warnings.push_back("discrepancy: the classical lemma is stated without c1 != 0; every use here has c1 = -1");
  r.result["system"] = "lv-classical";
  r.result["steps"] = demo.steps;
  r.result["all_reproduced"] = demo.all_ok;
  if (!demo.all_ok) r.code = 1;
  return r;
}

Report demo_twod() {
  Report r;
  Demo demo;
  xy_step(demo, "lv-2d", "c*X + (a + d)*Y + b", "invariant curve XY = 0 with its cofactor");
  normalization_step(demo, LvFamily::TwoD);
  {
    json d;
    auto sys = load("lv-2d", {{"a", "1"}, {"c", "1"}});
    auto cert = darboux_search(sys, 2);
    bool ok = only_monomials(cert, d);
    d["system"] = "2d system with a = c = 1, b and d independent";
    demo.add("no invariant curves up to degree 2", "bounded-degree shadow of the missing invariant curves", d, ok);
  }
  auto norm = load("lv-2d-normalized", {});
  {
    json d;
    auto got = expansion_residuals(norm, d);
    bool ok = residuals_match(got, {"r*a0^2", "a0' - a0", "a0' - a0"});
    demo.add("leading exponent of X as a series in Y", "2d leading-exponent lemma", d, ok);
  }
  {
    json d = json::object(), kpos, kneg;
    auto [o1, v1] = relation_step(norm, "k", ExponentCase::positive(), "1", "", kpos);
    auto [o2, v2] = relation_step(norm, "k", ExponentCase::negative(), "1", "", kneg);
    d["k>0"] = kpos;
    d["k<0"] = kneg;
    Frac want = symbolic("1/X - k");
    bool ok = o1.F == want && o2.F == want && v1.kind == VerdictKind::NoAlgebraic && v2.kind == VerdictKind::NoAlgebraic;
    demo.add("second stage at k != 0", "algebraic-solution criterion (nonzero polynomial part)", d, ok);
  }
  {
    json d;
    auto [o, v] = relation_step(norm, "k", ExponentCase::zero(), "1", "", d);
    bool ok = o.F == symbolic("1/X") && v.kind == VerdictKind::HasAlgebraic;
    demo.add("second stage at k = 0", "algebraic-solution criterion (b0 a constant multiple of X)", d, ok);
  }
  {
    json d;
    auto [o, v] = relation_step(norm, "s", ExponentCase::between(0, 1), "1", "-beta*X*Y", d);
    bool ok = o.F == symbolic("1/X - s") && o.c.is_zero() && v.kind == VerdictKind::NoAlgebraic;
    demo.add("case 1: 0 < s < 1", "algebraic-solution criterion", d, ok);
  }
  {
    json d;
    auto [o, v] = relation_step(norm, "s", ExponentCase::value(1), "1", "-beta*X*Y", d);
    bool ok = o.F == symbolic("1/X - 1") && o.c == symbolic("-beta") && v.kind == VerdictKind::NoAlgebraic;
    demo.add("case 2: s = 1", "2d inhomogeneous lemma v' = (1/t - 1) v + c", d, ok);
  }
  r.result["system"] = "lv-2d";
  r.result["steps"] = demo.steps;
  r.result["all_reproduced"] = demo.all_ok;
  if (!demo.all_ok) r.code = 1;
  return r;
}

Report demo(const std::string& which) {
  if (which == "lv-classical") return demo_classical();
  if (which == "lv-2d") return demo_twod();
  throw UsageError("demo expects lv-classical or lv-2d");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and numeric checks for Lotka-Volterra systems", "lvsm"};
  app.require_subcommand(1, 1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Human-readable output instead of JSON");
  std::vector<std::string> sets;
  std::function<Report()> action;

  auto with_sets = [&](CLI::App* sub) {
    sub->add_option("--set", sets, "Parameter override name=expr (repeatable)");
    sub->add_flag("--pretty", pretty, "Human-readable output instead of JSON");
  };

  std::string spec, poly;
  auto* ci = app.add_subcommand("check-invariant", "Is P a Darboux polynomial? Prints its cofactor");
  ci->add_option("spec", spec, "Preset name or system file")->required();
  ci->add_option("--poly", poly, "Polynomial in the system variables")->required();
  with_sets(ci);
  ci->callback([&] { action = [&] { return check_invariant(spec, poly, parse_sets(sets)); }; });

  unsigned max_degree = 1;
  std::string basis;
  std::size_t budget = 10000;
  auto* sd = app.add_subcommand("search-darboux", "Bounded-degree search for invariant polynomials");
  sd->add_option("spec", spec, "Preset name or system file")->required();
  sd->add_option("--max-degree", max_degree, "Degree bound N")->required()->check(CLI::Range(1u, 12u));
  sd->add_option("--basis", basis, "Comma-separated coefficient basis (default 1)");
  sd->add_option("--node-budget", budget, "Case-split node budget")->capture_default_str();
  with_sets(sd);
  sd->callback([&] { action = [&] { return search_darboux(spec, max_degree, basis, budget, parse_sets(sets)); }; });

  std::string coeff, inhom, var = "t";
  auto* oa = app.add_subcommand("ode-alg-test", "Algebraic solutions of y' = F y (+ c)");
  oa->add_option("--coeff", coeff, "F")->required();
  oa->add_option("--inhom", inhom, "c (default 0)");
  oa->add_option("--var", var, "Independent variable")->capture_default_str();
  oa->add_flag("--pretty", pretty, "Human-readable output instead of JSON");
  oa->callback([&] { action = [&] { return ode_alg_test(coeff, inhom, var); }; });

  std::string family, q, c1, c2;
  auto* lc = app.add_subcommand("lemma-check", "v' = (q/t + c1) v + c2 (classical) or v' = (1/t - 1) v + c2 (twod)");
  lc->add_option("--family", family, "classical or twod")->required()->check(CLI::IsMember({"classical", "twod"}));
  lc->add_option("--q", q, "q")->required();
  lc->add_option("--c1", c1, "c1")->required();
  lc->add_option("--c2", c2, "c2")->required();
  lc->add_option("--var", var, "Independent variable")->capture_default_str();
  lc->add_flag("--pretty", pretty, "Human-readable output instead of JSON");
  lc->callback([&] { action = [&] { return lemma_check(family, q, c1, c2, var); }; });

  PuiseuxArgs pa;
  auto* pc = app.add_subcommand("puiseux-constraints", "Leading-order constraints of a Puiseux ansatz");
  pc->add_option("spec", pa.spec, "Preset name or system file")->required();
  pc->add_option("--case", pa.exp_case, "r<0, r=0, r>0, r=1 or 0<r<1 (all three signs if omitted)");
  pc->add_option("--lead", pa.lead, "Name of the leading exponent (default from --case, else r)");
  pc->add_option("--depth", pa.depth, "Number of constraints to extract")->capture_default_str();
  pc->add_option("--terms", pa.terms, "Ansatz terms")->capture_default_str();
  pc->add_option("--ramification", pa.ramification, "Ramification index e")->capture_default_str();
  pc->add_option("--expand", pa.expand, "Variable written as a series (default the first)");
  pc->add_option("--in", pa.in, "Variable whose powers are used");
  pc->add_option("--coeff-name", pa.coeff, "Coefficient name (default a, or b with --relation)");
  pc->add_option("--relation", pa.relation, "Expand an auxiliary a with a' = m a + forcing; gives m");
  pc->add_option("--forcing", pa.forcing, "Forcing term of the side relation");
  with_sets(pc);
  pc->callback([&] { action = [&] { return puiseux_constraints(pa, parse_sets(sets)); }; });

  auto* fi = app.add_subcommand("first-integral", "Brestovski form and first integral of x' = x(y + b), y' = y(x + d)");
  fi->add_option("spec", spec, "Preset name or system file")->required();
  with_sets(fi);
  fi->callback([&] { action = [&] { return first_integral_cmd(spec, parse_sets(sets)); }; });

  NumericArgs na;
  auto numeric = [&](CLI::App* sub) {
    sub->add_option("spec", na.spec, "Preset name or system file")->required();
    sub->add_option("--params", na.params, "Parameter values name=value[,name=value...]");
    sub->add_option("--horizon", na.horizon, "Final time")->capture_default_str();
    sub->add_option("--rtol", na.rtol, "Relative tolerance")->capture_default_str();
    sub->add_option("--samples", na.samples, "Grid intervals")->capture_default_str();
    with_sets(sub);
  };
  auto* in = app.add_subcommand("integrate", "Adaptive Dormand-Prince integration on a uniform grid");
  numeric(in);
  in->add_option("--ic", na.ics, "x0,y0")->required();
  in->add_option("--out", na.out, "CSV file (t,x,y)");
  in->get_option("--horizon")->required();
  in->callback([&] { action = [&] { return integrate_cmd(na, parse_sets(sets)); }; });

  auto* ip = app.add_subcommand("independence-probe", "Numeric relation and ratio probes on several trajectories");
  numeric(ip);
  ip->add_option("--ic", na.ics, "x0,y0 (repeat)")->required();
  ip->add_option("--max-degree", na.max_degree, "Monomial degree D")->required();
  ip->callback([&] { action = [&] { return independence_probe(na, parse_sets(sets)); }; });

  std::string which;
  auto* dm = app.add_subcommand("demo", "Full pipeline for a preset family");
  dm->add_option("system", which, "lv-classical or lv-2d")->required()->check(CLI::IsMember({"lv-classical", "lv-2d"}));
  dm->add_flag("--pretty", pretty, "Human-readable output instead of JSON");
  dm->callback([&] { action = [&] { return demo(which); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  json command;
  command["name"] = app.get_subcommands().front()->get_name();
  json args = json::array();
  for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
  command["args"] = args;

  Report rep;
  std::string error;
  auto start = std::chrono::steady_clock::now();
  try {
    rep = action();
  } catch (const std::exception& e) {
    error = e.what();
    rep.code = 2;
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  json doc;
  doc["schema"] = 1;
  doc["command"] = command;
  if (error.empty()) {
    doc["result"] = rep.result;
  } else {
    doc["error"] = error;
    err << "error: " << error << "\n";
  }
  doc["warnings"] = rep.warnings;
  doc["exit_code"] = rep.code;
  doc["timing_ms"] = ms;

  if (pretty) {
    out << "lvsm " << command["name"].get<std::string>() << "\n";
    if (error.empty()) {
      render(rep.result, out, 2);
    } else {
      out << "  error: " << error << "\n";
    }
    for (const auto& w : rep.warnings) out << "warning: " << w << "\n";
    out << "exit " << rep.code << " (" << static_cast<long>(std::lround(ms)) << " ms)\n";
  } else {
    out << doc.dump(2) << "\n";
  }
  return rep.code;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"lvsm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace lvsm
