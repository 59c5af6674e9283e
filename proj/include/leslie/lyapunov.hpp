#pragma once

#include <cstdint>

#include "leslie/model.hpp"

namespace leslie {

struct LyapunovEstimate {
  double lambda_max = 0.0;      // mean log growth rate per step, natural log
  std::int64_t n_steps = 0;     // post-transient steps actually accumulated
  std::int64_t transient = 0;
  int renorm_interval = 1;
  bool terminated_early = false;  // orbit left the domain after the grace window
};

// Thrown when the orbit leaves the domain before transient + 100 steps;
// carries whatever partial estimate had been accumulated.
class OrbitEscaped : public Error {
 public:
  OrbitEscaped(const std::string& what, const LyapunovEstimate& partial)
      : Error(ErrorCode::orbit_escaped, what), partial_(partial) {}

  const LyapunovEstimate& partial() const { return partial_; }

 private:
  LyapunovEstimate partial_;
};

// Largest Lyapunov exponent of the 2D map: a unit tangent vector is pushed
// through the Jacobian along the orbit and its log growth is accumulated
// over the post-transient steps (the tangent is also propagated through the
// transient so it has aligned with the dominant direction by the time
// accumulation starts). This log-sum equals the limit the product
// J_0 J_1 ... J_n defines, without ever forming the ill-conditioned product.
//
// renorm_interval controls how many steps may pass between tangent
// renormalizations; estimates are interval-independent up to rounding.
// Per-step log growth is floored at ln(1e-300) so superstable points do
// not drag the average to -inf. Requires n >= transient + 100.
LyapunovEstimate lyapunov_max(const ModelParams& p, const State& s0, std::int64_t n,
                              std::int64_t transient, int renorm_interval = 1);

// Same estimate for the prey-axis map f_{a,b}: the mean of ln|a-1-2bx|
// over post-transient steps of orbits that stay inside (0, (a-1)/b).
LyapunovEstimate lyapunov_1d(double a, double b, double x0, std::int64_t n,
                             std::int64_t transient);

}  // namespace leslie
