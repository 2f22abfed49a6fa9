#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lvsm/diffstruct.hpp"
#include "lvsm/numerics.hpp"

namespace lvsm {

class Degenerate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class LvFamily { Classical, TwoD };

// LV_{a,b,c,d} -> LV_{1,1,1,ratio} via X = (c/b) x, Y = (a/b) y, tau = b t.
struct NormalizationRecord {
  LvFamily family = LvFamily::Classical;
  Frac a, b, c, d;
  Frac x_scale, y_scale, time_scale;
  Frac ratio;  // alpha = d/b (classical) or gamma = d/a (2d)
  std::string ratio_name;
};

// Classical: x' = x(a y + b), y' = y(c x + d). 2d: y' = y(c x + d y).
PlanarSystem lv_system(LvFamily family, const Frac& a, const Frac& b, const Frac& c, const Frac& d,
                       const std::vector<std::string>& params);

// The normalized system keeps the parameter symbols of (a, b, c, d); the
// pullback to the original system is checked exactly before returning.
std::pair<PlanarSystem, NormalizationRecord> normalize_system(LvFamily family, const Frac& a, const Frac& b,
                                                              const Frac& c, const Frac& d,
                                                              const std::vector<std::string>& params);

// F' = sum a_i G_i'/G_i in the differential indeterminate Z (here z = X - Y).
struct BrestovskiForm {
  SymId z = 0;
  Frac F;
  std::vector<std::pair<Frac, Frac>> terms;  // (a_i, G_i) in Z, Z'
  Frac z_of_xy, zprime_of_xy;               // realization in the system variables
  std::vector<std::string> identities;      // checked identities, as text
  std::string coefficient_status;
};

// Extracts (b, d) from x' = x(y + b), y' = y(x + d); throws otherwise.
std::pair<Frac, Frac> classical_bd(const PlanarSystem& sys);

BrestovskiForm to_brestovski(const PlanarSystem& sys);

// H = (X - Y) + d log X - b log Y, checked to be conserved.
LogLinearExpr first_integral(const PlanarSystem& sys);
// The same integral written through the Brestovski form.
std::string first_integral_zform(const PlanarSystem& sys);

enum class RatioVerdict { IndependentEvidence, DependenceCandidate, Inconclusive };
const char* to_string(RatioVerdict v);

struct RatioReport {
  RatioVerdict verdict = RatioVerdict::Inconclusive;
  double epsilon = 0;    // mean ratio
  double variation = 0;  // (max - min) / |mean|
  std::size_t samples = 0;
  std::string diagnostic;
};

// rho(t) = (x1 - y1) / (x2 - y2) on the common grid.
RatioReport ratio_probe(const Trajectory& t1, const Trajectory& t2, double tol = 1e-6);

enum class QRatioKind { Rational, IrrationalGeneric, LikelyRational, Unknown };
const char* to_string(QRatioKind k);

struct QRatio {
  QRatioKind kind = QRatioKind::Unknown;
  Rational value;  // Rational, LikelyRational
};

QRatio qratio_check(const Frac& b, const Frac& d);
QRatio qratio_check(double b, double d);

}  // namespace lvsm
