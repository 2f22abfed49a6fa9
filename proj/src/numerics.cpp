#include "lvsm/numerics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

namespace lvsm {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::HorizonReached:
      return "HorizonReached";
    case Termination::BlowUpGuard:
      return "BlowUpGuard";
    case Termination::StepUnderflow:
      return "StepUnderflow";
  }
  return "?";
}

const char* to_string(RelationVerdict v) {
  switch (v) {
    case RelationVerdict::NoRelationEvidence:
      return "NoRelationEvidence";
    case RelationVerdict::RelationEvidence:
      return "RelationEvidence";
    case RelationVerdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

double evaluate(const Frac& e, const std::map<SymId, double>& values) {
  auto value = [&](SymId s) {
    auto it = values.find(s);
    if (it == values.end()) throw NumericError("no numeric value for '" + symbol_name(s) + "'");
    return it->second;
  };
  double num = e.num().eval<double>(value);
  double den = e.den().eval<double>(value);
  return num / den;
}

NumericField::NumericField(const PlanarSystem& sys, const ParamValues& params) {
  if (!sys.tower.generators().empty())
    throw NumericError("numeric integration needs a tower of constant parameters only");
  // only parameters that occur in the field need values
  std::set<SymId> used;
  for (const MPoly* fp : {&sys.f, &sys.g})
    for (const auto& [m, c] : fp->terms())
      for (SymId s : c.symbols()) used.insert(s);
  for (SymId p : sys.tower.parameters()) {
    if (!used.count(p)) continue;
    auto it = params.find(symbol_name(p));
    if (it == params.end()) throw NumericError("missing value for parameter '" + symbol_name(p) + "'");
    if (!std::isfinite(it->second)) throw NumericError("parameter '" + symbol_name(p) + "' is not finite");
    values_[p] = it->second;
  }
  for (const auto& [name, v] : params)
    if (!sys.tower.is_parameter(intern(name))) throw NumericError("'" + name + "' is not a parameter of the system");
  auto compile = [&](const MPoly& p, std::vector<Term>& out) {
    for (const auto& [m, c] : p.terms()) {
      double cv = evaluate(c, values_);
      if (!std::isfinite(cv)) throw NumericError("coefficient is not finite at the given parameters");
      out.push_back({cv, m.degree(sys.vars[0]), m.degree(sys.vars[1])});
    }
  };
  compile(sys.f, f_);
  compile(sys.g, g_);
}

State NumericField::operator()(const State& s) const {
  auto ev = [&](const std::vector<Term>& ts) {
    double acc = 0;
    for (const auto& t : ts) acc += t.c * std::pow(s[0], t.ex) * std::pow(s[1], t.ey);
    return acc;
  };
  return {ev(f_), ev(g_)};
}

namespace {

// Dormand-Prince tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> ks) {
  State out = y;
  for (const auto& [a, k] : ks) {
    out[0] += h * a * (*k)[0];
    out[1] += h * a * (*k)[1];
  }
  return out;
}

bool finite(const State& s) { return std::isfinite(s[0]) && std::isfinite(s[1]); }

struct Step {
  State y, k7, err;
};

Step dp_step(const NumericField& f, const State& y, const State& k1, double h) {
  State k2 = f(axpy(y, h, {{a21, &k1}}));
  State k3 = f(axpy(y, h, {{a31, &k1}, {a32, &k2}}));
  State k4 = f(axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
  State k5 = f(axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
  State k6 = f(axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
  Step s;
  s.y = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
  s.k7 = f(s.y);
  s.err = axpy(State{0, 0}, h, {{e1, &k1}, {e3, &k3}, {e4, &k4}, {e5, &k5}, {e6, &k6}, {e7, &s.k7}});
  return s;
}

void check_ic(const PlanarSystem& sys, const NumericField& f, const State& ic) {
  if (!finite(ic)) throw NumericError("initial condition is not finite");
  auto values = f.values();
  values[sys.vars[0]] = ic[0];
  values[sys.vars[1]] = ic[1];
  for (const auto& nd : sys.nondegenerate)
    if (evaluate(nd.to_frac(), values) == 0)
      throw NumericError("initial condition violates " + format_poly(nd) + " != 0");
}

}  // namespace

Trajectory integrate(const PlanarSystem& sys, const ParamValues& params, const State& ic, double horizon,
                     const IntegrateOptions& opts) {
  if (!(opts.rtol >= 1e-14 && opts.rtol <= 1e-3)) throw NumericError("rtol must lie in [1e-14, 1e-3]");
  if (!(horizon > 0) || !std::isfinite(horizon)) throw NumericError("horizon must be positive");
  if (opts.samples < 200) throw NumericError("at least 200 output intervals are required");
  NumericField f(sys, params);
  check_ic(sys, f, ic);

  Trajectory tr;
  tr.vars = sys.vars;
  tr.params = params;
  tr.ic = ic;
  tr.rtol = opts.rtol;
  tr.atol = opts.rtol * 1e-3;
  tr.t.push_back(0);
  tr.state.push_back(ic);

  const double hmin = 1e-14 * horizon;
  State y = ic;
  State k1 = f(y);
  if (!finite(k1)) throw NumericError("field is not finite at the initial condition");
  double t = 0;
  double scale = std::max(std::abs(y[0]), std::abs(y[1])) + 1e-3;
  double rate = std::max(std::abs(k1[0]), std::abs(k1[1]));
  double h = std::min(horizon / static_cast<double>(opts.samples), rate > 0 ? 1e-2 * scale / rate : horizon);
  std::size_t next = 1;
  while (next <= opts.samples) {
    double target = horizon * static_cast<double>(next) / static_cast<double>(opts.samples);
    bool hits = t + h >= target;
    double hs = hits ? target - t : h;
    Step s = dp_step(f, y, k1, hs);
    double err = 0;
    if (finite(s.y) && finite(s.err)) {
      for (int i = 0; i < 2; ++i) {
        double sc = tr.atol + tr.rtol * std::max(std::abs(y[i]), std::abs(s.y[i]));
        err = std::max(err, std::abs(s.err[i]) / sc);
      }
    } else {
      err = 1e10;  // overflow in a trial step: shrink
    }
    if (err <= 1) {
      t = hits ? target : t + hs;
      y = s.y;
      k1 = s.k7;
      ++tr.accepted;
      if (std::isnan(y[0]) || std::isnan(y[1])) {
        std::ostringstream msg;
        msg << "NaN in state at t = " << t;
        throw NumericError(msg.str());
      }
      bool escaped = std::abs(y[0]) + std::abs(y[1]) >= opts.blowup;
      if (hits || escaped) {
        tr.t.push_back(t);
        tr.state.push_back(y);
        if (hits) ++next;
      }
      if (escaped) {
        tr.reason = Termination::BlowUpGuard;
        return tr;
      }
      double fac = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      // keep the grid-clipped step from shrinking the controller's proposal
      h = std::max(h, hs) * std::clamp(fac, 0.2, 5.0);
    } else {
      ++tr.rejected;
      h = hs * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
    }
    if (h < hmin) {
      tr.reason = Termination::StepUnderflow;
      return tr;
    }
  }
  tr.reason = Termination::HorizonReached;
  return tr;
}

State integrate_fixed(const PlanarSystem& sys, const ParamValues& params, const State& ic, double horizon,
                      std::size_t steps) {
  if (steps == 0) throw NumericError("at least one step");
  NumericField f(sys, params);
  State y = ic;
  State k1 = f(y);
  double h = horizon / static_cast<double>(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    Step s = dp_step(f, y, k1, h);
    y = s.y;
    k1 = s.k7;
  }
  if (!finite(y)) throw NumericError("fixed-step integration overflowed");
  return y;
}

double conservation_drift(const LogLinearExpr& H, const Trajectory& traj) {
  if (traj.t.empty()) throw NumericError("empty trajectory");
  std::map<SymId, double> values;
  for (const auto& [name, v] : traj.params) values[intern(name)] = v;
  std::vector<double> sign0;
  auto eval_at = [&](const State& s, bool first) {
    values[traj.vars[0]] = s[0];
    values[traj.vars[1]] = s[1];
    double h = evaluate(H.rational, values);
    for (std::size_t i = 0; i < H.logs.size(); ++i) {
      double a = evaluate(H.logs[i].arg, values);
      if (first) sign0.push_back(a > 0 ? 1 : -1);
      if (a == 0 || (a > 0 ? 1 : -1) != sign0[i])
        throw NumericError("log argument " + format_frac(H.logs[i].arg) + " changes sign along the trajectory");
      h += evaluate(H.logs[i].coeff, values) * std::log(std::abs(a));
    }
    return h;
  };
  double h0 = eval_at(traj.state[0], true);
  double drift = 0;
  for (const auto& s : traj.state) drift = std::max(drift, std::abs(eval_at(s, false) - h0));
  return drift / std::max(1.0, std::abs(h0));
}

std::vector<std::vector<State>> common_grid(const std::vector<Trajectory>& trajs, std::vector<double>* times,
                                            bool* resampled) {
  if (trajs.empty()) throw NumericError("no trajectories");
  double end = trajs[0].t.back();
  for (const auto& tr : trajs) end = std::min(end, tr.t.back());
  std::vector<double> grid;
  for (double t : trajs[0].t)
    if (t <= end) grid.push_back(t);
  bool any = false;
  std::vector<std::vector<State>> out;
  for (const auto& tr : trajs) {
    std::vector<State> col;
    bool same = tr.t.size() >= grid.size() && std::equal(grid.begin(), grid.end(), tr.t.begin());
    if (same) {
      col.assign(tr.state.begin(), tr.state.begin() + static_cast<long>(grid.size()));
    } else {
      any = true;
      for (double t : grid) {
        auto it = std::lower_bound(tr.t.begin(), tr.t.end(), t);
        std::size_t j = static_cast<std::size_t>(it - tr.t.begin());
        if (j == 0) {
          col.push_back(tr.state[0]);
          continue;
        }
        if (j >= tr.t.size()) j = tr.t.size() - 1;
        double w = (t - tr.t[j - 1]) / (tr.t[j] - tr.t[j - 1]);
        col.push_back({tr.state[j - 1][0] + w * (tr.state[j][0] - tr.state[j - 1][0]),
                       tr.state[j - 1][1] + w * (tr.state[j][1] - tr.state[j - 1][1])});
      }
    }
    out.push_back(std::move(col));
  }
  if (times) *times = grid;
  if (resampled) *resampled = any;
  return out;
}

namespace {

void exponent_vectors(std::size_t n, unsigned deg, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
  if (cur.size() + 1 == n) {
    cur.push_back(deg);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (unsigned e = deg + 1; e-- > 0;) {
    cur.push_back(e);
    exponent_vectors(n, deg - e, cur, out);
    cur.pop_back();
  }
}

}  // namespace

RelationReport relation_probe(const std::vector<Trajectory>& trajs, unsigned maxdeg) {
  RelationReport rep;
  std::vector<double> times;
  auto cols = common_grid(trajs, &times, &rep.resampled);
  std::size_t n = 2 * trajs.size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < trajs.size(); ++i) {
    names.push_back("x" + std::to_string(i + 1));
    names.push_back("y" + std::to_string(i + 1));
  }
  std::vector<std::vector<unsigned>> exps;
  for (unsigned d = 0; d <= maxdeg; ++d) {
    std::vector<unsigned> cur;
    exponent_vectors(n, d, cur, exps);
  }
  for (const auto& e : exps) {
    std::string m;
    for (std::size_t i = 0; i < n; ++i) {
      if (!e[i]) continue;
      if (!m.empty()) m += "*";
      m += names[i];
      if (e[i] > 1) m += "^" + std::to_string(e[i]);
    }
    rep.monomials.push_back(m.empty() ? "1" : m);
  }
  rep.samples = times.size();
  if (rep.samples < 3 * exps.size())
    throw NumericError("relation_probe needs at least " + std::to_string(3 * exps.size()) + " common samples, got " +
                       std::to_string(rep.samples));

  Eigen::MatrixXd A(static_cast<Eigen::Index>(rep.samples), static_cast<Eigen::Index>(exps.size()));
  for (std::size_t r = 0; r < rep.samples; ++r) {
    std::vector<double> coords;
    for (const auto& c : cols) {
      coords.push_back(c[r][0]);
      coords.push_back(c[r][1]);
    }
    for (std::size_t j = 0; j < exps.size(); ++j) {
      double v = 1;
      for (std::size_t i = 0; i < n; ++i) v *= std::pow(coords[i], exps[j][i]);
      A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = v;
    }
  }
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    double nrm = A.col(j).norm();
    if (nrm > 0) A.col(j) /= nrm;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  Eigen::MatrixXd R = qr.matrixR().topLeftCorner(A.cols(), A.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < A.cols(); ++i) rep.spectrum.push_back(std::abs(R(i, i)));
  std::sort(rep.spectrum.rbegin(), rep.spectrum.rend());
  rep.ratio = rep.spectrum.front() > 0 ? rep.spectrum.back() / rep.spectrum.front() : 0;
  if (rep.ratio > rep.no_relation_threshold) rep.verdict = RelationVerdict::NoRelationEvidence;
  else if (rep.ratio < rep.relation_threshold) rep.verdict = RelationVerdict::RelationEvidence;
  else rep.verdict = RelationVerdict::Inconclusive;
  return rep;
}

void write_csv(const Trajectory& traj, std::ostream& out) {
  auto old = out.precision(17);
  out << "t,x,y\n";
  for (std::size_t i = 0; i < traj.t.size(); ++i)
    out << traj.t[i] << ',' << traj.state[i][0] << ',' << traj.state[i][1] << '\n';
  out.precision(old);
}

}  // namespace lvsm
