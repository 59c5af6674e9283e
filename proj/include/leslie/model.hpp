#pragma once

#include "leslie/errors.hpp"

namespace leslie {

// The five positive coefficients of the map
//   x' = x (a - 1 - b x - c y)
//   y' = y (d - 1 - alpha y / x)
// a and d are the prey/predator growth parameters, b the prey
// self-limitation, c the predation rate, alpha the predator crowding.
struct ModelParams {
  double a, b, c, d, alpha;

  // Rejects anything outside a > 1, d > 1, b, c, alpha > 0.
  ModelParams(double a_, double b_, double c_, double d_, double alpha_);
};

// A phase point; the domain is x > 0, y >= 0.
struct State {
  double x = 0.0;
  double y = 0.0;
};

bool is_valid_state(const State& s);

struct JacobianMatrix {
  double j11, j12, j21, j22;

  double trace() const { return j11 + j22; }
  double det() const { return j11 * j22 - j12 * j21; }
};

// Prey densities below this are treated as extinct; it keeps the
// y-update away from the singular y^2/x term.
inline constexpr double kPreyUnderflow = 1e-300;

enum class DomainViolation {
  none,
  prey_nonpositive,   // x' <= 0
  predator_negative,  // y' < 0
  prey_underflow,     // 0 < x' < kPreyUnderflow
};

// Outcome of one application of the map. An orbit leaving the domain is a
// normal result (extinction or escape), not a failure; the raw computed
// pair is kept so callers can report it.
struct StepResult {
  State next{};  // meaningful only when exited() is false
  double raw_x = 0.0;
  double raw_y = 0.0;
  DomainViolation violation = DomainViolation::none;

  bool exited() const { return violation != DomainViolation::none; }
};

StepResult step(const ModelParams& p, const State& s);

// Jacobian of the map at s:
//   [ a-1-2bx-cy      -cx        ]
//   [ alpha y^2/x^2   d-1-2alpha y/x ]
JacobianMatrix jacobian(const ModelParams& p, const State& s);

const char* domain_violation_name(DomainViolation v);

}  // namespace leslie
