#include "leslie/lyapunov.hpp"

#include <cmath>
#include <string>

namespace leslie {

namespace {

const double kLogFloor = std::log(kPreyUnderflow);

// Keeps the running tangent-vector state of the 2D estimator: the vector is
// left unnormalized between renormalization points and its log magnitude is
// folded into the accumulator whenever we renormalize.
struct TangentAccumulator {
  double vx = 1.0 / std::sqrt(2.0);
  double vy = 1.0 / std::sqrt(2.0);
  double acc = 0.0;
  std::int64_t steps_in_block = 0;

  void push(const JacobianMatrix& j, bool accumulate, int renorm_interval) {
    const double wx = j.j11 * vx + j.j12 * vy;
    const double wy = j.j21 * vx + j.j22 * vy;
    vx = wx;
    vy = wy;
    if (!accumulate) {
      normalize(false);
      return;
    }
    ++steps_in_block;
    const double mag = std::hypot(vx, vy);
    // fold early if the magnitude drifts toward over/underflow
    if (steps_in_block >= renorm_interval || mag > 1e150 || mag < 1e-150)
      normalize(true);
  }

  void flush() {
    if (steps_in_block > 0) normalize(true);
  }

 private:
  void normalize(bool accumulate) {
    const double mag = std::hypot(vx, vy);
    if (mag > 0.0 && std::isfinite(mag)) {
      if (accumulate)
        acc += std::max(std::log(mag), kLogFloor * static_cast<double>(steps_in_block));
      vx /= mag;
      vy /= mag;
    } else {
      // tangent annihilated by a singular Jacobian; floor and restart it
      if (accumulate) acc += kLogFloor * static_cast<double>(steps_in_block);
      vx = 1.0 / std::sqrt(2.0);
      vy = 1.0 / std::sqrt(2.0);
    }
    steps_in_block = 0;
  }
};

[[noreturn]] void throw_escaped(std::int64_t exit_step, const LyapunovEstimate& partial) {
  throw OrbitEscaped("orbit left the domain after " + std::to_string(exit_step) +
                         " steps, before the transient + 100 grace window",
                     partial);
}

}  // namespace

LyapunovEstimate lyapunov_max(const ModelParams& p, const State& s0, std::int64_t n,
                              std::int64_t transient, int renorm_interval) {
  if (!is_valid_state(s0))
    throw Error(ErrorCode::invalid_argument, "initial state must have x > 0, y >= 0");
  if (transient < 0 || renorm_interval < 1)
    throw Error(ErrorCode::invalid_argument, "bad transient or renorm interval");
  if (n < transient + 100)
    throw Error(ErrorCode::invalid_argument, "lyapunov_max requires n >= transient + 100");

  LyapunovEstimate est;
  est.transient = transient;
  est.renorm_interval = renorm_interval;

  TangentAccumulator tangent;
  State s = s0;
  for (std::int64_t k = 0; k < n; ++k) {
    tangent.push(jacobian(p, s), k >= transient, renorm_interval);
    const StepResult r = step(p, s);
    if (r.exited()) {
      tangent.flush();
      est.n_steps = std::max<std::int64_t>(k + 1 - transient, 0);
      est.lambda_max = est.n_steps > 0 ? tangent.acc / static_cast<double>(est.n_steps) : 0.0;
      est.terminated_early = true;
      if (k + 1 < transient + 100) throw_escaped(k + 1, est);
      return est;
    }
    s = r.next;
  }
  tangent.flush();
  est.n_steps = n - transient;
  est.lambda_max = tangent.acc / static_cast<double>(est.n_steps);
  return est;
}

LyapunovEstimate lyapunov_1d(double a, double b, double x0, std::int64_t n,
                             std::int64_t transient) {
  if (!(a > 1.0) || !(b > 0.0))
    throw Error(ErrorCode::invalid_argument, "lyapunov_1d requires a > 1 and b > 0");
  const double right = (a - 1.0) / b;
  if (!(x0 > 0.0) || !(x0 < right))
    throw Error(ErrorCode::invalid_argument, "x0 must lie in (0, (a-1)/b)");
  if (transient < 0)
    throw Error(ErrorCode::invalid_argument, "transient must be nonnegative");
  if (n < transient + 100)
    throw Error(ErrorCode::invalid_argument, "lyapunov_1d requires n >= transient + 100");

  LyapunovEstimate est;
  est.transient = transient;

  double acc = 0.0;
  std::int64_t cnt = 0;
  double x = x0;
  for (std::int64_t k = 0; k < n; ++k) {
    if (k >= transient) {
      acc += std::max(std::log(std::abs(a - 1.0 - 2.0 * b * x)), kLogFloor);
      ++cnt;
    }
    x = x * (a - 1.0 - b * x);
    if (!(x > 0.0 && x < right)) {
      est.n_steps = cnt;
      est.lambda_max = cnt > 0 ? acc / static_cast<double>(cnt) : 0.0;
      est.terminated_early = true;
      if (k + 1 < transient + 100) throw_escaped(k + 1, est);
      return est;
    }
  }
  est.n_steps = cnt;
  est.lambda_max = acc / static_cast<double>(cnt);
  return est;
}

}  // namespace leslie
