#include "leslie/conjugacy.hpp"

#include <algorithm>
#include <cmath>

namespace leslie {

double f1d(double a, double b, double x) { return x * (a - 1.0 - b * x); }

double f1d_deriv(double a, double b, double x) { return a - 1.0 - 2.0 * b * x; }

double logistic(double mu, double x) { return mu * x * (1.0 - x); }

ConjugacyMap conjugacy(double a, double b) {
  if (!(b > 0.0)) throw Error(ErrorCode::invalid_argument, "conjugacy requires b > 0");
  if (a == 3.0)
    throw Error(ErrorCode::degenerate_conjugacy,
                "h degenerates to a constant at a = 3 and is no homeomorphism");
  const double mu = 3.0 - a;
  return ConjugacyMap{mu / b, (a - 2.0) / b, mu};
}

std::optional<Cycle2Report> cycle2(double a, double b) {
  if (!(b > 0.0)) throw Error(ErrorCode::invalid_argument, "cycle2 requires b > 0");
  if (!(a > 4.0)) return std::nullopt;
  const double root = std::sqrt(a * (a - 4.0));
  Cycle2Report r;
  r.p1 = (a - root) / (2.0 * b);
  r.p2 = (a + root) / (2.0 * b);
  r.multiplier = -a * a + 4.0 * a + 1.0;
  r.attracting = std::abs(r.multiplier) < 1.0;
  return r;
}

double p0_preimage(double a, double b) {
  if (!(b > 0.0)) throw Error(ErrorCode::invalid_argument, "p0_preimage requires b > 0");
  if (!(a > 2.0))
    throw Error(ErrorCode::invalid_argument, "p0_preimage requires a > 2 so that p0 > 0");
  // roots of b x^2 - (a-1) x + (a-2)/b = 0; the discriminant is (a-3)^2
  const double disc = (a - 1.0) * (a - 1.0) - 4.0 * (a - 2.0);
  if (disc < 0.0)
    throw Error(ErrorCode::no_preimage, "p0 exceeds the maximum of f");
  const double q = ((a - 1.0) + std::sqrt(disc)) / 2.0;
  return std::min(q / b, (a - 2.0) / (b * q));
}

RegimeLabel regime_1d(double a) {
  if (!(a > 1.0)) throw Error(ErrorCode::invalid_argument, "regime_1d requires a > 1");
  const double flip = 2.0 + std::sqrt(6.0);   // 2-cycle loses stability
  const double chaos = 3.0 + std::sqrt(5.0);  // chaotic for a beyond this
  if (a <= 2.0) return RegimeLabel::extinction;
  if (a < 4.0) return RegimeLabel::fixed_point;
  if (a > chaos) return RegimeLabel::chaotic;
  if (a > 4.0 && a < flip) return RegimeLabel::period2;
  if (a > flip && a < 4.543) return RegimeLabel::period4;
  if (a > 4.544 && a < 4.564) return RegimeLabel::period8;
  return RegimeLabel::undetermined_gap;
}

const char* regime_name(RegimeLabel r) {
  switch (r) {
    case RegimeLabel::extinction: return "extinction";
    case RegimeLabel::fixed_point: return "fixed-point";
    case RegimeLabel::period2: return "period-2";
    case RegimeLabel::period4: return "period-4";
    case RegimeLabel::period8: return "period-8";
    case RegimeLabel::undetermined_gap: return "undetermined-gap";
    case RegimeLabel::chaotic: return "chaotic";
  }
  return "unknown";
}

}  // namespace leslie
