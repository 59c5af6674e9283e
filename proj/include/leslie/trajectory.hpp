#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "leslie/model.hpp"

namespace leslie {

enum class Termination { max_steps, converged, cycle, domain_exit };

struct Trajectory {
  ModelParams params;
  State initial{};
  std::vector<State> states;  // states[0] == initial, one entry per surviving step
  Termination termination = Termination::max_steps;

  // Filled when termination == domain_exit: the 1-based step index whose
  // image left the domain, the violated constraint and the raw pair.
  std::int64_t exit_step = -1;
  DomainViolation exit_violation = DomainViolation::none;
  double exit_raw_x = 0.0;
  double exit_raw_y = 0.0;
};

// Applies the map n times from s0, or until the orbit leaves the domain.
// Every surviving state is recorded.
Trajectory iterate(const ModelParams& p, const State& s0, std::int64_t n);

struct CycleDetection {
  int period = 0;             // 1 means a fixed point
  std::vector<State> points;  // one period, in orbit order (the final states)
  double residual = 0.0;      // max deviation over the verification window
};

inline constexpr double kDefaultCycleTol = 1e-6;
inline constexpr double kCycleTolFloor = 1e-9;
inline constexpr int kDefaultMaxPeriod = 64;
inline constexpr std::int64_t kDefaultTransient = 1000;

// Scans periods 1..max_period over the last 2*max_period states and returns
// the first (hence minimal) period whose shifted states agree to
// max(tol * |state|, 1e-9) throughout the window; nullopt if none does.
// Requires length > transient + 2*max_period (insufficient_data otherwise).
std::optional<CycleDetection> detect_limit(const Trajectory& t,
                                           double tol = kDefaultCycleTol,
                                           int max_period = kDefaultMaxPeriod,
                                           std::int64_t transient = kDefaultTransient);

enum class SweptParam { a, b, c, d, alpha };

struct SweepSpec {
  ModelParams base;
  SweptParam swept = SweptParam::a;
  double from = 0.0;
  double to = 0.0;
  int points = 1;  // grid size; a single point degenerates to plain iteration
  State s0{};
};

struct SweepRow {
  double value = 0.0;
  std::vector<State> samples;  // the states right after the transient
  bool domain_exit = false;    // orbit left the domain before sampling ended
  std::int64_t exit_step = -1;
};

// Iterates each grid value from s0, discards `transient` steps and records
// the next `samples` states. Rows come back ordered by grid index no matter
// how many worker threads ran them (max_threads 0 means hardware default).
// A row whose orbit exits keeps its partial samples and flags the exit.
std::vector<SweepRow> bifurcation_sweep(const SweepSpec& spec, std::int64_t transient,
                                        std::int64_t samples, int max_threads = 0);

const char* termination_name(Termination t);
const char* swept_param_name(SweptParam p);

}  // namespace leslie
