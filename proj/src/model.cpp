#include "leslie/model.hpp"

namespace leslie {

ModelParams::ModelParams(double a_, double b_, double c_, double d_, double alpha_)
    : a(a_), b(b_), c(c_), d(d_), alpha(alpha_) {
  if (!(a > 1.0) || !(b > 0.0) || !(c > 0.0) || !(d > 1.0) || !(alpha > 0.0))
    throw Error(ErrorCode::invalid_params,
                "model parameters must satisfy a > 1, b > 0, c > 0, d > 1, alpha > 0");
}

bool is_valid_state(const State& s) { return s.x > 0.0 && s.y >= 0.0; }

StepResult step(const ModelParams& p, const State& s) {
  StepResult r;
  r.raw_x = s.x * (p.a - 1.0 - p.b * s.x - p.c * s.y);
  r.raw_y = s.y * (p.d - 1.0 - p.alpha * s.y / s.x);
  if (r.raw_x <= 0.0)
    r.violation = DomainViolation::prey_nonpositive;
  else if (r.raw_y < 0.0)
    r.violation = DomainViolation::predator_negative;
  else if (r.raw_x < kPreyUnderflow)
    r.violation = DomainViolation::prey_underflow;
  else
    r.next = State{r.raw_x, r.raw_y};
  return r;
}

JacobianMatrix jacobian(const ModelParams& p, const State& s) {
  return JacobianMatrix{
      p.a - 1.0 - 2.0 * p.b * s.x - p.c * s.y,
      -p.c * s.x,
      p.alpha * s.y * s.y / (s.x * s.x),
      p.d - 1.0 - 2.0 * p.alpha * s.y / s.x,
  };
}

const char* domain_violation_name(DomainViolation v) {
  switch (v) {
    case DomainViolation::none: return "none";
    case DomainViolation::prey_nonpositive: return "prey-nonpositive";
    case DomainViolation::predator_negative: return "predator-negative";
    case DomainViolation::prey_underflow: return "prey-underflow";
  }
  return "unknown";
}

}  // namespace leslie
