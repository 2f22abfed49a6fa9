#include "lvsm/brestovski.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lvsm {

namespace {

SymId X() { return intern("X"); }
SymId Y() { return intern("Y"); }
Frac fx() { return Frac::symbol(X()); }
Frac fy() { return Frac::symbol(Y()); }

void require(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("identity check failed: " + what);
}

}  // namespace

PlanarSystem lv_system(LvFamily family, const Frac& a, const Frac& b, const Frac& c, const Frac& d,
                       const std::vector<std::string>& params) {
  PlanarSystem s;
  s.vars = {X(), Y()};
  for (const auto& p : params) s.tower.add_parameter(intern(p));
  for (const Frac* v : {&a, &b, &c, &d})
    for (SymId sym : v->symbols())
      if (!s.tower.is_parameter(sym)) throw UndeclaredSymbol(symbol_name(sym));
  Frac f = fx() * (a * fy() + b);
  Frac g = fy() * (c * fx() + (family == LvFamily::Classical ? d : d * fy()));
  s.f = MPoly::from_frac(f, s.vars);
  s.g = MPoly::from_frac(g, s.vars);
  s.nondegenerate = {MPoly::var(s.vars, X()), MPoly::var(s.vars, Y())};
  s.name = family == LvFamily::Classical ? "lv-classical" : "lv-2d";
  return s;
}

std::pair<PlanarSystem, NormalizationRecord> normalize_system(LvFamily family, const Frac& a, const Frac& b,
                                                              const Frac& c, const Frac& d,
                                                              const std::vector<std::string>& params) {
  const char* names[] = {"a", "b", "c", "d"};
  const Frac* vals[] = {&a, &b, &c, &d};
  for (int i = 0; i < 4; ++i)
    if (vals[i]->is_zero()) throw std::invalid_argument(std::string("parameter ") + names[i] + " must be nonzero");
  NormalizationRecord rec;
  rec.family = family;
  rec.a = a;
  rec.b = b;
  rec.c = c;
  rec.d = d;
  rec.x_scale = c / b;
  rec.y_scale = a / b;
  rec.time_scale = b;
  rec.ratio = family == LvFamily::Classical ? d / b : d / a;
  rec.ratio_name = family == LvFamily::Classical ? "alpha" : "gamma";

  PlanarSystem orig = lv_system(family, a, b, c, d, params);
  PlanarSystem norm = lv_system(family, Frac(1), Frac(1), Frac(1), rec.ratio, params);
  norm.name = orig.name + "-normalized";

  // x' = (b / sx) fN(sx x, sy y), likewise for y
  auto pull = [&](const MPoly& p, const Frac& s) {
    Frac e = p.to_frac().substitute(X(), rec.x_scale * fx()).substitute(Y(), rec.y_scale * fy());
    return rec.time_scale / s * e;
  };
  require(pull(norm.f, rec.x_scale) == orig.f.to_frac(), "normalized X-equation pulls back");
  require(pull(norm.g, rec.y_scale) == orig.g.to_frac(), "normalized Y-equation pulls back");
  return {std::move(norm), rec};
}

std::pair<Frac, Frac> classical_bd(const PlanarSystem& sys) {
  if (sys.vars.size() != 2 || sys.vars[0] != X() || sys.vars[1] != Y())
    throw std::invalid_argument("expected a system in X, Y");
  MPoly xy = MPoly::var(sys.vars, X()) * MPoly::var(sys.vars, Y());
  MPoly fr = sys.f - xy, gr = sys.g - xy;
  Frac b = fr.coefficient(Monomial::var(X()));
  Frac d = gr.coefficient(Monomial::var(Y()));
  if (fr != MPoly::var(sys.vars, X()) * b || gr != MPoly::var(sys.vars, Y()) * d)
    throw std::invalid_argument("expected X' = X*(Y + b), Y' = Y*(X + d)");
  if (!sys.tower.generators().empty()) throw std::invalid_argument("expected constant coefficients");
  return {b, d};
}

BrestovskiForm to_brestovski(const PlanarSystem& sys) {
  auto [b, d] = classical_bd(sys);
  if (b == d) throw Degenerate("b = d: z = X - Y satisfies z' = b z and the change of variables degenerates");
  BrestovskiForm bf;
  bf.z = intern("Z");
  Frac Z = Frac::symbol(bf.z), Zp = Frac::symbol(prime(bf.z));
  bf.F = Z;
  bf.terms = {{b, Zp - b * Z}, {-d, Zp - d * Z}};
  bf.z_of_xy = fx() - fy();
  bf.zprime_of_xy = derive_system(bf.z_of_xy, sys);
  Frac z = bf.z_of_xy, zp = bf.zprime_of_xy;
  VarOrder order = sys.order();

  require((b - d) * fx() == zp - d * z, "(b - d) X = z' - d z");
  bf.identities.push_back("(b - d)*X = z' - d*z");
  require((b - d) * fy() == zp - b * z, "(b - d) Y = z' - b z");
  bf.identities.push_back("(b - d)*Y = z' - b*z");
  require(zp == b * sys.g.to_frac() / fy() - d * sys.f.to_frac() / fx(), "z' = b Y'/Y - d X'/X");
  bf.identities.push_back("z' = X' - Y' = b*Y'/Y - d*X'/X = " + format_frac(zp, order));

  Frac rhs;
  for (const auto& [coef, G] : bf.terms) {
    Frac g = G.substitute(prime(bf.z), zp).substitute(bf.z, z);
    rhs += coef * derive_system(g, sys) / g;
  }
  require(derive_system(z, sys) == rhs, "F' = sum a_i G_i'/G_i");
  bf.identities.push_back("Z' = b*(Z' - b*Z)'/(Z' - b*Z) - d*(Z' - d*Z)'/(Z' - d*Z) at Z = X - Y");
  bf.coefficient_status = to_string(qratio_check(b, d).kind);
  return bf;
}

LogLinearExpr first_integral(const PlanarSystem& sys) {
  auto [b, d] = classical_bd(sys);
  LogLinearExpr h;
  h.rational = fx() - fy();
  h.add_log(d, fx());
  h.add_log(-b, fy());
  if (!loglinear_derive(h, sys).is_zero()) throw std::logic_error("first integral is not conserved");
  return h;
}

std::string first_integral_zform(const PlanarSystem& sys) {
  auto [b, d] = classical_bd(sys);
  VarOrder order({intern("Z")});
  Frac Z = Frac::symbol(intern("Z")), Zp = Frac::symbol(prime(intern("Z")));
  return "Z - (" + format_frac(b, order) + ")*log(" + format_frac(Zp - b * Z, order) + ") + (" +
         format_frac(d, order) + ")*log(" + format_frac(Zp - d * Z, order) + ")";
}

const char* to_string(RatioVerdict v) {
  switch (v) {
    case RatioVerdict::IndependentEvidence:
      return "IndependentEvidence";
    case RatioVerdict::DependenceCandidate:
      return "DependenceCandidate";
    case RatioVerdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

RatioReport ratio_probe(const Trajectory& t1, const Trajectory& t2, double tol) {
  if (!(tol > 0)) throw NumericError("tolerance must be positive");
  std::vector<double> times;
  auto cols = common_grid({t1, t2}, &times);
  RatioReport rep;
  rep.samples = times.size();
  double dmax = 0;
  for (const auto& s : cols[1]) dmax = std::max(dmax, std::abs(s[0] - s[1]));
  std::vector<double> rho;
  for (std::size_t i = 0; i < times.size(); ++i) {
    double den = cols[1][i][0] - cols[1][i][1];
    if (std::abs(den) <= tol * std::max(1.0, dmax)) {
      rep.diagnostic = "x2 - y2 passes within tolerance of 0 at t = " + std::to_string(times[i]);
      return rep;
    }
    rho.push_back((cols[0][i][0] - cols[0][i][1]) / den);
  }
  auto [lo, hi] = std::minmax_element(rho.begin(), rho.end());
  double mean = 0;
  for (double r : rho) mean += r;
  mean /= static_cast<double>(rho.size());
  rep.epsilon = mean;
  if (mean == 0) {
    rep.diagnostic = "mean ratio is zero";
    return rep;
  }
  rep.variation = (*hi - *lo) / std::abs(mean);
  if (rep.variation < tol) {
    if (std::abs(std::abs(mean) - 1) < tol) {
      rep.verdict = RatioVerdict::DependenceCandidate;
    } else {
      rep.diagnostic = "ratio is constant but not a root of unity";
    }
  } else if (rep.variation > 10 * tol) {
    rep.verdict = RatioVerdict::IndependentEvidence;
  } else {
    rep.diagnostic = "variation between tol and 10*tol";
  }
  return rep;
}

const char* to_string(QRatioKind k) {
  switch (k) {
    case QRatioKind::Rational:
      return "Rational";
    case QRatioKind::IrrationalGeneric:
      return "IrrationalGeneric";
    case QRatioKind::LikelyRational:
      return "LikelyRational";
    case QRatioKind::Unknown:
      return "Unknown";
  }
  return "?";
}

QRatio qratio_check(const Frac& b, const Frac& d) {
  if (b.is_zero()) throw std::invalid_argument("b must be nonzero");
  Frac r = d / b;
  QRatio q;
  if (r.is_constant()) {
    q.kind = QRatioKind::Rational;
    q.value = r.constant_value();
  } else {
    q.kind = QRatioKind::IrrationalGeneric;
  }
  return q;
}

QRatio qratio_check(double b, double d) {
  if (b == 0) throw std::invalid_argument("b must be nonzero");
  double x = d / b;
  QRatio q;
  if (!std::isfinite(x)) return q;
  // convergents h/k of the continued fraction of x
  long long h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  double rest = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(rest);
    if (std::abs(a) > 1e15) break;
    auto ai = static_cast<long long>(a);
    long long h = ai * h0 + h1, k = ai * k0 + k1;
    if (k > 1000000) break;
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= 1e-12 * std::max(1.0, std::abs(x))) {
      q.kind = QRatioKind::LikelyRational;
      q.value = Rational(static_cast<long>(h), static_cast<unsigned long>(k));
      q.value.canonicalize();
      return q;
    }
    double frac = rest - a;
    if (frac == 0) break;
    rest = 1 / frac;
  }
  return q;
}

}  // namespace lvsm
