#include "leslie/invariants.hpp"

#include <algorithm>
#include <cmath>

namespace leslie {

bool in_m1(const ModelParams& p, const State& s) {
  return s.y == 0.0 && s.x > 0.0 && s.x < (p.a - 1.0) / p.b;
}

bool in_m2(const ModelParams& p, const State& s) {
  if (!(s.x > 0.0) || !(s.y >= 0.0)) return false;
  return p.alpha * s.y / (p.d - 1.0) <= s.x && s.x < (p.a - 1.0 - p.c * s.y) / p.b;
}

std::optional<double> m2_condition2_xbound(const ModelParams& p) {
  if (!(p.d < 4.0 * p.a - 3.0)) return std::nullopt;
  const double root = std::sqrt(p.b * p.c * p.alpha * (p.d - 1.0) +
                                p.b * p.b * p.alpha * p.alpha +
                                p.c * p.c * (p.a - 1.0) * (p.d - 1.0));
  return (2.0 * p.alpha * root - p.alpha * (p.c * (p.d - 1.0) + 2.0 * p.b * p.alpha)) /
         (p.c * p.c * (p.d - 1.0));
}

namespace {

State sample_m1(const ModelParams& p, std::uint64_t seed, std::int64_t i) {
  const double u = detail::uniform_open01(seed, 2 * static_cast<std::uint64_t>(i));
  return State{u * (p.a - 1.0) / p.b, 0.0};
}

State sample_m2(const ModelParams& p, double xmax, std::uint64_t seed, std::int64_t i) {
  const double ux = detail::uniform_open01(seed, 2 * static_cast<std::uint64_t>(i));
  const double uy = detail::uniform01(seed, 2 * static_cast<std::uint64_t>(i) + 1);
  const double x = ux * xmax;
  const double ymax = std::min(x * (p.d - 1.0) / p.alpha, (p.a - 1.0 - p.b * x) / p.c);
  return State{x, uy * std::max(ymax, 0.0)};
}

}  // namespace

InvarianceVerdict verify_invariance(const ModelParams& p, InvariantSet set_id,
                                    std::int64_t n_samples, std::uint64_t seed) {
  if (n_samples < 1)
    throw Error(ErrorCode::invalid_argument, "verify_invariance requires n_samples >= 1");

  InvarianceVerdict v;
  v.set_id = set_id;
  v.n_samples = n_samples;

  double xmax = (p.a - 1.0) / p.b;
  if (set_id == InvariantSet::m2) {
    if (!(p.a > 1.0 && p.a <= 2.0))
      throw Error(ErrorCode::hypothesis_violation,
                  "invariance of M2 is stated for 1 < a <= 2");
    if (auto bound = m2_condition2_xbound(p)) {
      v.branch = ConditionBranch::case2;
      xmax = std::min(xmax, *bound);
    } else if (p.d <= 2.0) {
      v.branch = ConditionBranch::case1;
    } else {
      throw Error(ErrorCode::hypothesis_violation,
                  "M2 invariance needs 1 < d <= 2 or d < 4a - 3");
    }
  }

  for (std::int64_t i = 0; i < n_samples; ++i) {
    const State s = set_id == InvariantSet::m1 ? sample_m1(p, seed, i)
                                               : sample_m2(p, xmax, seed, i);
    const StepResult r = step(p, s);
    const bool stays = !r.exited() && (set_id == InvariantSet::m1 ? in_m1(p, r.next)
                                                                  : in_m2(p, r.next));
    if (!stays) {
      v.holds = false;
      v.witness = s;
      return v;
    }
  }
  return v;
}

const char* invariant_set_name(InvariantSet s) {
  return s == InvariantSet::m1 ? "M1" : "M2";
}

const char* condition_branch_name(ConditionBranch b) {
  switch (b) {
    case ConditionBranch::none: return "none";
    case ConditionBranch::case1: return "case-1";
    case ConditionBranch::case2: return "case-2";
  }
  return "unknown";
}

}  // namespace leslie
