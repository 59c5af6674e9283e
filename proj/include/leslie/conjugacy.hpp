#pragma once

#include <optional>

#include "leslie/errors.hpp"

namespace leslie {

// Restriction of the map to the prey axis: f_{a,b}(x) = x (a - 1 - b x).
double f1d(double a, double b, double x);
double f1d_deriv(double a, double b, double x);

// Quadratic family F_mu(x) = mu x (1 - x).
double logistic(double mu, double x);

// Affine change of coordinates h(x) = p x + q with p = (3-a)/b,
// q = (a-2)/b carrying F_mu onto f_{a,b} for mu = 3 - a.
struct ConjugacyMap {
  double p, q, mu;

  double h(double x) const { return p * x + q; }
};

// Throws degenerate_conjugacy at a = 3, where h collapses to a constant.
ConjugacyMap conjugacy(double a, double b);

struct Cycle2Report {
  double p1, p2;      // the swapped pair, p1 < p2
  double multiplier;  // f'(p1) f'(p2) = -a^2 + 4a + 1, independent of b
  bool attracting;    // |multiplier| < 1, i.e. 4 < a < 2 + sqrt(6)
};

// Closed-form 2-cycle of f_{a,b}. Empty for a <= 4; at a = 4 the pair
// degenerates onto the fixed point and is not reported.
std::optional<Cycle2Report> cycle2(double a, double b);

// The smaller root of x (a-1-bx) = (a-2)/b: the point in (0, (a-1)/(2b)]
// mapped onto the fixed point p0 = (a-2)/b. Requires a > 2; at a = 3 the
// root is double and equals p0 itself.
double p0_preimage(double a, double b);

enum class RegimeLabel {
  extinction,         // a in (1, 2]
  fixed_point,        // a in (2, 4)
  period2,            // a in (4, 2+sqrt(6))
  period4,            // a in (2+sqrt(6), 4.543)
  period8,            // a in (4.544, 4.564)
  undetermined_gap,   // boundary points and unlabelled windows
  chaotic,            // a > 3+sqrt(5)
};

// Asymptotic regime of f_{a,b} as a function of a alone (b only rescales x).
RegimeLabel regime_1d(double a);

const char* regime_name(RegimeLabel r);

}  // namespace leslie
