#include "leslie/trajectory.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace leslie {

Trajectory iterate(const ModelParams& p, const State& s0, std::int64_t n) {
  if (!is_valid_state(s0))
    throw Error(ErrorCode::invalid_argument, "initial state must have x > 0, y >= 0");
  if (n < 1) throw Error(ErrorCode::invalid_argument, "iterate requires n >= 1");

  Trajectory t{p, s0, {}, Termination::max_steps};
  t.states.reserve(static_cast<std::size_t>(n) + 1);
  t.states.push_back(s0);
  for (std::int64_t k = 1; k <= n; ++k) {
    const StepResult r = step(p, t.states.back());
    if (r.exited()) {
      t.termination = Termination::domain_exit;
      t.exit_step = k;
      t.exit_violation = r.violation;
      t.exit_raw_x = r.raw_x;
      t.exit_raw_y = r.raw_y;
      break;
    }
    t.states.push_back(r.next);
  }
  return t;
}

namespace {

double norm_inf(const State& s) { return std::max(std::abs(s.x), std::abs(s.y)); }

double diff_inf(const State& u, const State& v) {
  return std::max(std::abs(u.x - v.x), std::abs(u.y - v.y));
}

}  // namespace

std::optional<CycleDetection> detect_limit(const Trajectory& t, double tol,
                                           int max_period, std::int64_t transient) {
  if (!(tol > 0.0) || max_period < 1 || transient < 0)
    throw Error(ErrorCode::invalid_argument, "detect_limit: bad tolerance or window");
  const auto n = static_cast<std::int64_t>(t.states.size());
  const std::int64_t window = 2 * static_cast<std::int64_t>(max_period);
  if (n <= transient + window)
    throw Error(ErrorCode::insufficient_data,
                "trajectory shorter than transient + 2*max_period");

  const auto& s = t.states;
  for (int period = 1; period <= max_period; ++period) {
    bool ok = true;
    double worst = 0.0;
    for (std::int64_t k = n - window; k + period < n; ++k) {
      const double diff = diff_inf(s[k], s[k + period]);
      const double scale = std::max(norm_inf(s[k]), norm_inf(s[k + period]));
      if (!(diff < std::max(tol * scale, kCycleTolFloor))) {
        ok = false;
        break;
      }
      worst = std::max(worst, diff);
    }
    if (ok) {
      CycleDetection det;
      det.period = period;
      det.points.assign(s.end() - period, s.end());
      det.residual = worst;
      return det;
    }
  }
  return std::nullopt;
}

namespace {

ModelParams with_swept(const ModelParams& base, SweptParam which, double v) {
  switch (which) {
    case SweptParam::a: return ModelParams(v, base.b, base.c, base.d, base.alpha);
    case SweptParam::b: return ModelParams(base.a, v, base.c, base.d, base.alpha);
    case SweptParam::c: return ModelParams(base.a, base.b, v, base.d, base.alpha);
    case SweptParam::d: return ModelParams(base.a, base.b, base.c, v, base.alpha);
    case SweptParam::alpha: return ModelParams(base.a, base.b, base.c, base.d, v);
  }
  throw Error(ErrorCode::invalid_argument, "unknown swept parameter");
}

SweepRow run_row(const ModelParams& p, double value, const State& s0,
                 std::int64_t transient, std::int64_t samples) {
  SweepRow row;
  row.value = value;
  row.samples.reserve(static_cast<std::size_t>(samples));
  State s = s0;
  for (std::int64_t k = 1; k <= transient + samples; ++k) {
    const StepResult r = step(p, s);
    if (r.exited()) {
      row.domain_exit = true;
      row.exit_step = k;
      break;
    }
    s = r.next;
    if (k > transient) row.samples.push_back(s);
  }
  return row;
}

}  // namespace

std::vector<SweepRow> bifurcation_sweep(const SweepSpec& spec, std::int64_t transient,
                                        std::int64_t samples, int max_threads) {
  if (transient < 1 || samples < 1)
    throw Error(ErrorCode::invalid_argument, "sweep requires transient >= 1 and samples >= 1");
  if (spec.points < 1)
    throw Error(ErrorCode::invalid_argument, "sweep requires at least one grid point");
  if (!is_valid_state(spec.s0))
    throw Error(ErrorCode::invalid_argument, "initial state must have x > 0, y >= 0");

  // Validate the whole grid up front so worker threads cannot throw.
  std::vector<double> values(static_cast<std::size_t>(spec.points));
  std::vector<ModelParams> grid;
  grid.reserve(values.size());
  for (int i = 0; i < spec.points; ++i) {
    values[static_cast<std::size_t>(i)] =
        spec.points == 1 ? spec.from
                         : spec.from + (spec.to - spec.from) * i / (spec.points - 1);
    grid.push_back(with_swept(spec.base, spec.swept, values[static_cast<std::size_t>(i)]));
  }

  std::vector<SweepRow> rows(values.size());
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const unsigned want = max_threads > 0 ? static_cast<unsigned>(max_threads) : hw;
  const unsigned n_threads = std::min<unsigned>(std::max(1u, want), values.size());

  if (n_threads == 1) {
    for (std::size_t i = 0; i < values.size(); ++i)
      rows[i] = run_row(grid[i], values[i], spec.s0, transient, samples);
    return rows;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < values.size(); i = next.fetch_add(1))
      rows[i] = run_row(grid[i], values[i], spec.s0, transient, samples);
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return rows;
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::max_steps: return "max-steps";
    case Termination::converged: return "converged";
    case Termination::cycle: return "cycle";
    case Termination::domain_exit: return "domain-exit";
  }
  return "unknown";
}

const char* swept_param_name(SweptParam p) {
  switch (p) {
    case SweptParam::a: return "a";
    case SweptParam::b: return "b";
    case SweptParam::c: return "c";
    case SweptParam::d: return "d";
    case SweptParam::alpha: return "alpha";
  }
  return "unknown";
}

}  // namespace leslie
