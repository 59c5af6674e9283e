// Command-line front end for the prey-predator map library. Everything goes
// through the C API in leslie.h; reports are emitted as key-value text, JSON
// or CSV with shortest round-trip numbers.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "leslie.h"

using ordered_json = nlohmann::ordered_json;

namespace {

// Usage problems exit with 2, failures of the wrapped operations with 3.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void check(leslie_status st) {
  if (st == LESLIE_OK) return;
  const std::string msg = std::string(leslie_status_name(st)) + ": " + leslie_last_error();
  if (st == LESLIE_ERR_INVALID_ARGUMENT || st == LESLIE_ERR_INVALID_PARAMS)
    throw UsageError(msg);
  throw OpError(msg);
}

void write_file_atomic(const std::string& path, const std::string& data) {
  namespace fs = std::filesystem;
  fs::path tmp(path);
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot open " + tmp.string() + " for writing");
    out << data;
    if (!out) throw UsageError("failed writing " + tmp.string());
  }
  fs::rename(tmp, fs::path(path));
}

// Emits report data (or CSV rows) to the -o target, or stdout without one.
void emit(const std::string& path, const std::string& data) {
  if (path.empty())
    std::cout << data;
  else
    write_file_atomic(path, data);
}

std::string scalar_text(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return fmt(v.get<double>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  return v.dump();
}

void flatten(const ordered_json& j, const std::string& prefix, std::string& out) {
  for (const auto& [key, value] : j.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object() || value.is_array())
      flatten(value, path, out);
    else
      out += path + " = " + scalar_text(value) + "\n";
  }
}

std::string render(const ordered_json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  std::string out;
  flatten(report, "", out);
  return out;
}

int env_threads() {
  const char* e = std::getenv("LESLIE_DYN_THREADS");
  if (!e || !*e) return 0;
  char* end = nullptr;
  const long v = std::strtol(e, &end, 10);
  if (*end != '\0' || v < 1) return 0;  // unusable values fall back to auto
  return static_cast<int>(v);
}

// Fills option values that were not given on the command line from the
// --config file and records the effective setting of every option so a
// rerun from the written config reproduces the run exactly.
class ConfigMerge {
 public:
  ConfigMerge(const CLI::App& cmd, const std::string& config_path) : cmd_(cmd) {
    effective["command"] = cmd.get_name();
    if (config_path.empty()) return;
    std::ifstream in(config_path);
    if (!in) throw UsageError("cannot read config file " + config_path);
    try {
      in >> cfg_;
    } catch (const std::exception& e) {
      throw UsageError("bad config file " + config_path + ": " + e.what());
    }
  }

  template <typename T>
  bool get(const char* flag, T& value) {
    const std::string key = flag + 2;
    bool present = cmd_.count(flag) > 0;
    if (!present && cfg_.contains(key)) {
      try {
        value = cfg_.at(key).get<T>();
      } catch (const std::exception&) {
        throw UsageError(std::string("config key '") + key + "' has the wrong type");
      }
      present = true;
    }
    effective[key] = value;
    return present;
  }

  template <typename T>
  void require(const char* flag, T& value) {
    if (!get(flag, value))
      throw UsageError(std::string("missing required option ") + flag +
                       " (give it on the command line or in --config)");
  }

  ordered_json effective;

 private:
  const CLI::App& cmd_;
  ordered_json cfg_;
};

void maybe_write_config(const std::string& path, const ordered_json& effective) {
  if (!path.empty()) write_file_atomic(path, effective.dump(2) + "\n");
}

// RAII wrappers for the C handles.
struct ParamsHandle {
  leslie_params* p = nullptr;
  ~ParamsHandle() { leslie_params_free(p); }
};
struct TrajectoryHandle {
  leslie_trajectory* t = nullptr;
  ~TrajectoryHandle() { leslie_trajectory_free(t); }
};
struct SweepHandle {
  leslie_sweep* s = nullptr;
  ~SweepHandle() { leslie_sweep_free(s); }
};

void make_params(double a, double b, double c, double d, double alpha, ParamsHandle& h) {
  check(leslie_params_create(a, b, c, d, alpha, &h.p));
}

ordered_json params_json(double a, double b, double c, double d, double alpha) {
  ordered_json j;
  j["a"] = a;
  j["b"] = b;
  j["c"] = c;
  j["d"] = d;
  j["alpha"] = alpha;
  return j;
}

ordered_json report_json(const leslie_fixed_point_report& r) {
  ordered_json j;
  j["id"] = leslie_fixed_point_id_name(r.id);
  j["x"] = r.location.x;
  j["y"] = r.location.y;
  j["exists"] = r.exists != 0;
  j["reason"] = r.reason;
  j["eig1_re"] = r.eig1_re;
  j["eig1_im"] = r.eig1_im;
  j["eig2_re"] = r.eig2_re;
  j["eig2_im"] = r.eig2_im;
  j["trace"] = r.trace;
  j["det"] = r.det;
  j["discriminant"] = r.discriminant;
  j["classification"] = leslie_stability_name(r.classification);
  return j;
}

const std::vector<std::string> kReportFormats = {"text", "json", "csv"};
const std::vector<std::string> kSummaryFormats = {"text", "json"};

void check_format(const std::string& format, const std::vector<std::string>& allowed) {
  for (const auto& f : allowed)
    if (format == f) return;
  throw UsageError("unsupported --format '" + format + "' for this command");
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOpts {
  double a = 0, b = 0, c = 0, d = 0, alpha = 0, x0 = 0, y0 = 0;
  std::int64_t steps = 0, transient = 1000;
  double tol = 1e-6;
  int max_period = 64;
  std::string output, format = "text", config, write_config;
};

int run_simulate(const CLI::App& cmd, SimulateOpts& o) {
  ConfigMerge m(cmd, o.config);
  m.require("--a", o.a);
  m.require("--b", o.b);
  m.require("--c", o.c);
  m.require("--d", o.d);
  m.require("--alpha", o.alpha);
  m.require("--x0", o.x0);
  m.require("--y0", o.y0);
  m.require("--steps", o.steps);
  m.get("--transient", o.transient);
  m.get("--tol", o.tol);
  m.get("--max-period", o.max_period);
  m.get("--format", o.format);
  check_format(o.format, kSummaryFormats);
  if (o.steps < 1) throw UsageError("--steps must be at least 1");
  maybe_write_config(o.write_config, m.effective);

  ParamsHandle params;
  make_params(o.a, o.b, o.c, o.d, o.alpha, params);
  TrajectoryHandle traj;
  check(leslie_iterate(params.p, leslie_state{o.x0, o.y0}, o.steps, &traj.t));

  const std::int64_t len = leslie_trajectory_length(traj.t);
  std::string csv = "n,x,y\n";
  for (std::int64_t i = 0; i < len; ++i) {
    leslie_state s;
    check(leslie_trajectory_state(traj.t, i, &s));
    csv += std::to_string(i) + "," + fmt(s.x) + "," + fmt(s.y) + "\n";
  }

  ordered_json summary;
  summary["command"] = "simulate";
  summary["params"] = params_json(o.a, o.b, o.c, o.d, o.alpha);
  summary["x0"] = o.x0;
  summary["y0"] = o.y0;
  summary["steps"] = o.steps;
  summary["recorded_states"] = len;
  const int term = leslie_trajectory_termination(traj.t);
  std::string term_label = leslie_termination_name(term);
  if (term == LESLIE_TERM_DOMAIN_EXIT) {
    summary["exit_step"] = leslie_trajectory_exit_step(traj.t);
    summary["exit_violation"] =
        leslie_domain_violation_name(leslie_trajectory_exit_violation(traj.t));
    double rx, ry;
    check(leslie_trajectory_exit_raw(traj.t, &rx, &ry));
    summary["exit_raw_x"] = rx;
    summary["exit_raw_y"] = ry;
  }

  leslie_state last;
  check(leslie_trajectory_state(traj.t, len - 1, &last));
  summary["final_x"] = last.x;
  summary["final_y"] = last.y;

  int found = 0, period = 0;
  double residual = 0;
  std::vector<leslie_state> points(static_cast<std::size_t>(o.max_period));
  const leslie_status det = leslie_detect_limit(traj.t, o.tol, o.max_period, o.transient,
                                                &found, &period, &residual, points.data(),
                                                o.max_period);
  if (det == LESLIE_OK && found) {
    summary["limit"]["period"] = period;
    summary["limit"]["residual"] = residual;
    for (int i = 0; i < period; ++i) {
      summary["limit"]["points"][static_cast<std::size_t>(i)]["x"] = points[static_cast<std::size_t>(i)].x;
      summary["limit"]["points"][static_cast<std::size_t>(i)]["y"] = points[static_cast<std::size_t>(i)].y;
    }
    if (term != LESLIE_TERM_DOMAIN_EXIT)
      term_label = period == 1 ? "converged" : "cycle(" + std::to_string(period) + ")";
  } else if (det == LESLIE_ERR_INSUFFICIENT_DATA) {
    summary["limit"] = "insufficient-data";
  } else if (det == LESLIE_OK) {
    summary["limit"] = "none";
  } else {
    check(det);
  }
  summary["termination"] = term_label;

  emit(o.output, csv);
  // keep data and summary separable when both share stdout
  std::ostream& sink = o.output.empty() ? std::cerr : std::cout;
  sink << render(summary, o.format);
  return 0;
}

// ---------------------------------------------------------------------------
// fixed-points

struct FixedPointOpts {
  double a = 0, b = 0, c = 0, d = 0, alpha = 0;
  std::string output, format = "text", config, write_config;
};

int run_fixed_points(const CLI::App& cmd, FixedPointOpts& o) {
  ConfigMerge m(cmd, o.config);
  m.require("--a", o.a);
  m.require("--b", o.b);
  m.require("--c", o.c);
  m.require("--d", o.d);
  m.require("--alpha", o.alpha);
  m.get("--format", o.format);
  check_format(o.format, kReportFormats);
  maybe_write_config(o.write_config, m.effective);

  ParamsHandle params;
  make_params(o.a, o.b, o.c, o.d, o.alpha, params);
  leslie_fixed_point_report reports[2];
  int count = 0;
  check(leslie_fixed_points(params.p, reports, &count));

  if (o.format == "csv") {
    std::string csv =
        "id,x,y,eig1_re,eig1_im,eig2_re,eig2_im,trace,det,discriminant,classification\n";
    for (int i = 0; i < count; ++i) {
      const auto& r = reports[i];
      csv += std::string(leslie_fixed_point_id_name(r.id)) + "," + fmt(r.location.x) + "," +
             fmt(r.location.y) + "," + fmt(r.eig1_re) + "," + fmt(r.eig1_im) + "," +
             fmt(r.eig2_re) + "," + fmt(r.eig2_im) + "," + fmt(r.trace) + "," + fmt(r.det) +
             "," + fmt(r.discriminant) + "," + leslie_stability_name(r.classification) + "\n";
    }
    emit(o.output, csv);
    return 0;
  }

  ordered_json report;
  report["command"] = "fixed-points";
  report["params"] = params_json(o.a, o.b, o.c, o.d, o.alpha);
  report["count"] = count;
  for (int i = 0; i < count; ++i)
    report["fixed_points"][static_cast<std::size_t>(i)] = report_json(reports[i]);
  if (count < 2) {
    // say why lambda2 (or everything) is absent
    leslie_fixed_point_report dummy;
    const leslie_status st = leslie_classify_lambda2(params.p, &dummy);
    if (st == LESLIE_ERR_NOT_A_FIXED_POINT) report["lambda2_absent"] = leslie_last_error();
  }
  emit(o.output, render(report, o.format));
  return 0;
}

// ---------------------------------------------------------------------------
// cycles

struct CyclesOpts {
  int dim = 2;
  double a = 0, b = 0, c = 0, d = 0, alpha = 0, x0 = 0, y0 = 0;
  std::int64_t steps = 100000, transient = 1000;
  double tol = 1e-6;
  int max_period = 64;
  std::string output, format = "text", config, write_config;
};

int run_cycles_1d(CyclesOpts& o) {
  int regime = 0;
  check(leslie_regime_1d(o.a, &regime));
  int exists = 0;
  leslie_cycle2_report cyc{};
  check(leslie_cycle2(o.a, o.b, &exists, &cyc));

  ordered_json report;
  report["command"] = "cycles";
  report["dim"] = 1;
  report["a"] = o.a;
  report["b"] = o.b;
  report["regime"] = leslie_regime_name(regime);
  if (o.a > 2.0) {
    report["p0"] = (o.a - 2.0) / o.b;
    double pre = 0;
    check(leslie_p0_preimage(o.a, o.b, &pre));
    report["p0_preimage"] = pre;
  }
  report["cycle2_exists"] = exists != 0;
  if (exists) {
    report["period"] = 2;
    report["p1"] = cyc.p1;
    report["p2"] = cyc.p2;
    report["multiplier"] = cyc.multiplier;
    report["attracting"] = cyc.attracting != 0;
  }

  if (o.format == "csv") {
    std::string csv = "regime,p0,p0_preimage,cycle2_exists,p1,p2,multiplier,attracting\n";
    csv += std::string(leslie_regime_name(regime)) + ",";
    csv += (o.a > 2.0 ? fmt((o.a - 2.0) / o.b) : "") + ",";
    csv += (report.contains("p0_preimage") ? fmt(report["p0_preimage"].get<double>()) : "");
    csv += std::string(",") + (exists ? "true" : "false") + ",";
    if (exists)
      csv += fmt(cyc.p1) + "," + fmt(cyc.p2) + "," + fmt(cyc.multiplier) + "," +
             (cyc.attracting ? "true" : "false");
    else
      csv += ",,,";
    csv += "\n";
    emit(o.output, csv);
    return 0;
  }
  emit(o.output, render(report, o.format));
  return 0;
}

int run_cycles_2d(CyclesOpts& o) {
  if (o.steps < 1) throw UsageError("--steps must be at least 1");
  ParamsHandle params;
  make_params(o.a, o.b, o.c, o.d, o.alpha, params);
  TrajectoryHandle traj;
  check(leslie_iterate(params.p, leslie_state{o.x0, o.y0}, o.steps, &traj.t));

  int found = 0, period = 0;
  double residual = 0;
  std::vector<leslie_state> points(static_cast<std::size_t>(o.max_period));
  check(leslie_detect_limit(traj.t, o.tol, o.max_period, o.transient, &found, &period,
                            &residual, points.data(), o.max_period));

  if (o.format == "csv") {
    std::string csv = "found,period,residual,point_index,x,y\n";
    if (!found) {
      csv += "false,,,,,\n";
    } else {
      for (int i = 0; i < period; ++i)
        csv += std::string("true,") + std::to_string(period) + "," + fmt(residual) + "," +
               std::to_string(i) + "," + fmt(points[static_cast<std::size_t>(i)].x) + "," +
               fmt(points[static_cast<std::size_t>(i)].y) + "\n";
    }
    emit(o.output, csv);
    return 0;
  }

  ordered_json report;
  report["command"] = "cycles";
  report["dim"] = 2;
  report["params"] = params_json(o.a, o.b, o.c, o.d, o.alpha);
  report["x0"] = o.x0;
  report["y0"] = o.y0;
  report["steps"] = o.steps;
  report["transient"] = o.transient;
  report["tol"] = o.tol;
  report["max_period"] = o.max_period;
  report["found"] = found != 0;
  if (found) {
    report["period"] = period;
    report["residual"] = residual;
    for (int i = 0; i < period; ++i) {
      report["points"][static_cast<std::size_t>(i)]["x"] = points[static_cast<std::size_t>(i)].x;
      report["points"][static_cast<std::size_t>(i)]["y"] = points[static_cast<std::size_t>(i)].y;
    }
  }
  emit(o.output, render(report, o.format));
  return 0;
}

int run_cycles(const CLI::App& cmd, CyclesOpts& o) {
  ConfigMerge m(cmd, o.config);
  m.get("--dim", o.dim);
  if (o.dim != 1 && o.dim != 2) throw UsageError("--dim must be 1 or 2");
  m.require("--a", o.a);
  m.require("--b", o.b);
  m.get("--format", o.format);
  check_format(o.format, kReportFormats);
  if (o.dim == 2) {
    m.require("--c", o.c);
    m.require("--d", o.d);
    m.require("--alpha", o.alpha);
    m.require("--x0", o.x0);
    m.require("--y0", o.y0);
    m.get("--steps", o.steps);
    m.get("--transient", o.transient);
    m.get("--tol", o.tol);
    m.get("--max-period", o.max_period);
  }
  maybe_write_config(o.write_config, m.effective);
  return o.dim == 1 ? run_cycles_1d(o) : run_cycles_2d(o);
}

// ---------------------------------------------------------------------------
// bifurcate

struct BifurcateOpts {
  double a = 0, b = 0, c = 0, d = 0, alpha = 0, x0 = 0, y0 = 0;
  std::string param;
  double from = 0, to = 0;
  int points = 0;
  std::int64_t transient = 1000, samples = 100;
  std::string output, format = "text", config, write_config;
};

int run_bifurcate(const CLI::App& cmd, BifurcateOpts& o) {
  ConfigMerge m(cmd, o.config);
  m.require("--a", o.a);
  m.require("--b", o.b);
  m.require("--c", o.c);
  m.require("--d", o.d);
  m.require("--alpha", o.alpha);
  m.require("--x0", o.x0);
  m.require("--y0", o.y0);
  m.require("--param", o.param);
  m.require("--from", o.from);
  m.require("--to", o.to);
  m.require("--points", o.points);
  m.get("--transient", o.transient);
  m.get("--samples", o.samples);
  m.get("--format", o.format);
  check_format(o.format, kSummaryFormats);
  maybe_write_config(o.write_config, m.effective);

  int swept = -1;
  const std::string names[] = {"a", "b", "c", "d", "alpha"};
  for (int i = 0; i < 5; ++i)
    if (o.param == names[i]) swept = i;
  if (swept < 0) throw UsageError("--param must be one of a, b, c, d, alpha");

  ParamsHandle params;
  make_params(o.a, o.b, o.c, o.d, o.alpha, params);
  SweepHandle sweep;
  check(leslie_bifurcation_sweep(params.p, swept, o.from, o.to, o.points,
                                 leslie_state{o.x0, o.y0}, o.transient, o.samples,
                                 env_threads(), &sweep.s));

  std::string csv = "param,x,y\n";
  const std::int64_t rows = leslie_sweep_rows(sweep.s);
  std::int64_t exited = 0;
  for (std::int64_t r = 0; r < rows; ++r) {
    const double value = leslie_sweep_value(sweep.s, r);
    const std::int64_t n = leslie_sweep_samples(sweep.s, r);
    for (std::int64_t i = 0; i < n; ++i) {
      leslie_state s;
      check(leslie_sweep_sample(sweep.s, r, i, &s));
      csv += fmt(value) + "," + fmt(s.x) + "," + fmt(s.y) + "\n";
    }
    if (leslie_sweep_row_exited(sweep.s, r)) ++exited;
  }

  ordered_json summary;
  summary["command"] = "bifurcate";
  summary["param"] = o.param;
  summary["from"] = o.from;
  summary["to"] = o.to;
  summary["points"] = o.points;
  summary["rows"] = rows;
  summary["rows_with_domain_exit"] = exited;

  emit(o.output, csv);
  std::ostream& sink = o.output.empty() ? std::cerr : std::cout;
  sink << render(summary, o.format);
  return 0;
}

// ---------------------------------------------------------------------------
// lyapunov

struct LyapunovOpts {
  int dim = 2;
  double a = 0, b = 0, c = 0, d = 0, alpha = 0, x0 = 0, y0 = 0;
  std::int64_t steps = 100000, transient = 1000;
  int renorm_interval = 1;
  std::string output, format = "text", config, write_config;
};

int run_lyapunov(const CLI::App& cmd, LyapunovOpts& o) {
  ConfigMerge m(cmd, o.config);
  m.get("--dim", o.dim);
  if (o.dim != 1 && o.dim != 2) throw UsageError("--dim must be 1 or 2");
  m.require("--a", o.a);
  m.require("--b", o.b);
  m.require("--x0", o.x0);
  if (o.dim == 2) {
    m.require("--c", o.c);
    m.require("--d", o.d);
    m.require("--alpha", o.alpha);
    m.require("--y0", o.y0);
    m.get("--renorm-interval", o.renorm_interval);
  }
  m.get("--steps", o.steps);
  m.get("--transient", o.transient);
  m.get("--format", o.format);
  check_format(o.format, kReportFormats);
  maybe_write_config(o.write_config, m.effective);

  leslie_lyapunov_estimate est{};
  if (o.dim == 2) {
    ParamsHandle params;
    make_params(o.a, o.b, o.c, o.d, o.alpha, params);
    const leslie_status st = leslie_lyapunov_max(params.p, leslie_state{o.x0, o.y0}, o.steps,
                                                 o.transient, o.renorm_interval, &est);
    if (st == LESLIE_ERR_ORBIT_ESCAPED)
      throw OpError(std::string("orbit-escaped: ") + leslie_last_error() +
                    " (partial lambda_max = " + fmt(est.lambda_max) + " over " +
                    std::to_string(est.n_steps) + " steps)");
    check(st);
  } else {
    const leslie_status st = leslie_lyapunov_1d(o.a, o.b, o.x0, o.steps, o.transient, &est);
    if (st == LESLIE_ERR_ORBIT_ESCAPED)
      throw OpError(std::string("orbit-escaped: ") + leslie_last_error() +
                    " (partial lambda_max = " + fmt(est.lambda_max) + " over " +
                    std::to_string(est.n_steps) + " steps)");
    check(st);
  }

  if (o.format == "csv") {
    std::string csv = "lambda_max,n_steps,transient,renorm_interval,terminated_early\n";
    csv += fmt(est.lambda_max) + "," + std::to_string(est.n_steps) + "," +
           std::to_string(est.transient) + "," + std::to_string(est.renorm_interval) + "," +
           (est.terminated_early ? "true" : "false") + "\n";
    emit(o.output, csv);
    return 0;
  }

  ordered_json report;
  report["command"] = "lyapunov";
  report["dim"] = o.dim;
  if (o.dim == 2) {
    report["params"] = params_json(o.a, o.b, o.c, o.d, o.alpha);
    report["x0"] = o.x0;
    report["y0"] = o.y0;
  } else {
    report["a"] = o.a;
    report["b"] = o.b;
    report["x0"] = o.x0;
  }
  report["steps"] = o.steps;
  report["lambda_max"] = est.lambda_max;
  report["n_steps"] = est.n_steps;
  report["transient"] = est.transient;
  report["renorm_interval"] = est.renorm_interval;
  report["terminated_early"] = est.terminated_early != 0;
  emit(o.output, render(report, o.format));
  return 0;
}

// ---------------------------------------------------------------------------
// conjugacy

struct ConjugacyOpts {
  double a = 0, b = 0;
  std::string output, format = "text", config, write_config;
};

int run_conjugacy(const CLI::App& cmd, ConjugacyOpts& o) {
  ConfigMerge m(cmd, o.config);
  m.require("--a", o.a);
  m.require("--b", o.b);
  m.get("--format", o.format);
  check_format(o.format, kReportFormats);
  maybe_write_config(o.write_config, m.effective);

  leslie_conjugacy_map map{};
  check(leslie_conjugacy(o.a, o.b, &map));

  if (o.format == "csv") {
    emit(o.output, "p,q,mu\n" + fmt(map.p) + "," + fmt(map.q) + "," + fmt(map.mu) + "\n");
    return 0;
  }
  ordered_json report;
  report["command"] = "conjugacy";
  report["a"] = o.a;
  report["b"] = o.b;
  report["p"] = map.p;
  report["q"] = map.q;
  report["mu"] = map.mu;
  emit(o.output, render(report, o.format));
  return 0;
}

// ---------------------------------------------------------------------------
// invariant-check

struct InvariantOpts {
  std::string set;
  double a = 0, b = 0, c = 0, d = 0, alpha = 0;
  std::int64_t samples = 10000;
  std::uint64_t seed = 0;
  std::string output, format = "text", config, write_config;
};

int run_invariant_check(const CLI::App& cmd, InvariantOpts& o) {
  ConfigMerge m(cmd, o.config);
  m.require("--set", o.set);
  m.require("--a", o.a);
  m.require("--b", o.b);
  m.require("--c", o.c);
  m.require("--d", o.d);
  m.require("--alpha", o.alpha);
  m.get("--samples", o.samples);
  // no hidden entropy: every sampled run must be reproducible from its seed
  m.require("--seed", o.seed);
  m.get("--format", o.format);
  check_format(o.format, kReportFormats);
  maybe_write_config(o.write_config, m.effective);

  int set_id = -1;
  if (o.set == "M1" || o.set == "m1") set_id = LESLIE_SET_M1;
  if (o.set == "M2" || o.set == "m2") set_id = LESLIE_SET_M2;
  if (set_id < 0) throw UsageError("--set must be M1 or M2");

  ParamsHandle params;
  make_params(o.a, o.b, o.c, o.d, o.alpha, params);
  leslie_invariance_verdict v{};
  check(leslie_verify_invariance(params.p, set_id, o.samples, o.seed, &v));

  if (o.format == "csv") {
    std::string csv = "set,branch,holds,n_samples,seed,witness_x,witness_y\n";
    csv += o.set + "," + leslie_condition_branch_name(v.branch) + "," +
           (v.holds ? "true" : "false") + "," + std::to_string(v.n_samples) + "," +
           std::to_string(o.seed) + ",";
    if (v.has_witness)
      csv += fmt(v.witness.x) + "," + fmt(v.witness.y);
    else
      csv += ",";
    csv += "\n";
    emit(o.output, csv);
    return 0;
  }

  ordered_json report;
  report["command"] = "invariant-check";
  report["set"] = set_id == LESLIE_SET_M1 ? "M1" : "M2";
  report["params"] = params_json(o.a, o.b, o.c, o.d, o.alpha);
  report["samples"] = o.samples;
  report["seed"] = o.seed;
  report["branch"] = leslie_condition_branch_name(v.branch);
  if (set_id == LESLIE_SET_M2) {
    int defined = 0;
    double bound = 0;
    check(leslie_m2_condition2_xbound(params.p, &defined, &bound));
    if (defined) report["condition2_xbound"] = bound;
  }
  report["holds"] = v.holds != 0;
  if (v.has_witness) {
    report["witness"]["x"] = v.witness.x;
    report["witness"]["y"] = v.witness.y;
  }
  emit(o.output, render(report, o.format));
  return 0;
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* cmd, std::string& output, std::string& format, std::string& config,
                std::string& write_config, const std::vector<std::string>& formats) {
  std::string choices;
  for (const auto& f : formats) choices += (choices.empty() ? "" : "|") + f;
  cmd->add_option("-o,--output", output, "write the result to this file (atomically)");
  cmd->add_option("--format", format, "report encoding: " + choices);
  cmd->add_option("--config", config, "read option values from this JSON run config");
  cmd->add_option("--write-config", write_config, "write the effective run config as JSON");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete-time prey-predator map toolkit"};
  app.require_subcommand(1);
  int rc = 0;

  auto guard = [&rc](auto&& fn) {
    try {
      rc = fn();
    } catch (const UsageError& e) {
      std::cerr << "error: " << e.what() << "\n";
      rc = 2;
    } catch (const OpError& e) {
      std::cerr << "error: " << e.what() << "\n";
      rc = 3;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      rc = 3;
    }
  };

  // simulate
  auto sim = std::make_shared<SimulateOpts>();
  CLI::App* sim_cmd = app.add_subcommand("simulate", "iterate the map and emit n,x,y rows");
  sim_cmd->add_option("--a", sim->a, "prey growth parameter");
  sim_cmd->add_option("--b", sim->b, "prey self-limitation");
  sim_cmd->add_option("--c", sim->c, "predation coefficient");
  sim_cmd->add_option("--d", sim->d, "predator growth parameter");
  sim_cmd->add_option("--alpha", sim->alpha, "predator crowding coefficient");
  sim_cmd->add_option("--x0", sim->x0, "initial prey density");
  sim_cmd->add_option("--y0", sim->y0, "initial predator density");
  sim_cmd->add_option("--steps", sim->steps, "number of iterations");
  sim_cmd->add_option("--transient", sim->transient, "steps discarded before cycle detection");
  sim_cmd->add_option("--tol", sim->tol, "cycle detection tolerance");
  sim_cmd->add_option("--max-period", sim->max_period, "largest period searched");
  add_common(sim_cmd, sim->output, sim->format, sim->config, sim->write_config,
             kSummaryFormats);
  sim_cmd->callback([&, sim] { guard([&] { return run_simulate(*sim_cmd, *sim); }); });

  // fixed-points
  auto fp = std::make_shared<FixedPointOpts>();
  CLI::App* fp_cmd = app.add_subcommand("fixed-points", "closed-form fixed points and stability");
  fp_cmd->add_option("--a", fp->a, "prey growth parameter");
  fp_cmd->add_option("--b", fp->b, "prey self-limitation");
  fp_cmd->add_option("--c", fp->c, "predation coefficient");
  fp_cmd->add_option("--d", fp->d, "predator growth parameter");
  fp_cmd->add_option("--alpha", fp->alpha, "predator crowding coefficient");
  add_common(fp_cmd, fp->output, fp->format, fp->config, fp->write_config, kReportFormats);
  fp_cmd->callback([&, fp] { guard([&] { return run_fixed_points(*fp_cmd, *fp); }); });

  // cycles
  auto cyc = std::make_shared<CyclesOpts>();
  CLI::App* cyc_cmd = app.add_subcommand("cycles", "closed-form (1D) or detected (2D) cycles");
  cyc_cmd->add_option("--dim", cyc->dim, "1: prey-axis closed forms, 2: orbit detection");
  cyc_cmd->add_option("--a", cyc->a, "prey growth parameter");
  cyc_cmd->add_option("--b", cyc->b, "prey self-limitation");
  cyc_cmd->add_option("--c", cyc->c, "predation coefficient");
  cyc_cmd->add_option("--d", cyc->d, "predator growth parameter");
  cyc_cmd->add_option("--alpha", cyc->alpha, "predator crowding coefficient");
  cyc_cmd->add_option("--x0", cyc->x0, "initial prey density");
  cyc_cmd->add_option("--y0", cyc->y0, "initial predator density");
  cyc_cmd->add_option("--steps", cyc->steps, "number of iterations");
  cyc_cmd->add_option("--transient", cyc->transient, "steps discarded before detection");
  cyc_cmd->add_option("--tol", cyc->tol, "cycle detection tolerance");
  cyc_cmd->add_option("--max-period", cyc->max_period, "largest period searched");
  add_common(cyc_cmd, cyc->output, cyc->format, cyc->config, cyc->write_config,
             kReportFormats);
  cyc_cmd->callback([&, cyc] { guard([&] { return run_cycles(*cyc_cmd, *cyc); }); });

  // bifurcate
  auto bif = std::make_shared<BifurcateOpts>();
  CLI::App* bif_cmd = app.add_subcommand("bifurcate", "sweep one parameter, emit param,x,y rows");
  bif_cmd->add_option("--a", bif->a, "prey growth parameter");
  bif_cmd->add_option("--b", bif->b, "prey self-limitation");
  bif_cmd->add_option("--c", bif->c, "predation coefficient");
  bif_cmd->add_option("--d", bif->d, "predator growth parameter");
  bif_cmd->add_option("--alpha", bif->alpha, "predator crowding coefficient");
  bif_cmd->add_option("--x0", bif->x0, "initial prey density");
  bif_cmd->add_option("--y0", bif->y0, "initial predator density");
  bif_cmd->add_option("--param", bif->param, "which parameter to sweep (a,b,c,d,alpha)");
  bif_cmd->add_option("--from", bif->from, "start of the sweep range");
  bif_cmd->add_option("--to", bif->to, "end of the sweep range");
  bif_cmd->add_option("--points", bif->points, "number of grid points");
  bif_cmd->add_option("--transient", bif->transient, "steps discarded per row");
  bif_cmd->add_option("--samples", bif->samples, "states recorded per row");
  add_common(bif_cmd, bif->output, bif->format, bif->config, bif->write_config,
             kSummaryFormats);
  bif_cmd->callback([&, bif] { guard([&] { return run_bifurcate(*bif_cmd, *bif); }); });

  // lyapunov
  auto lya = std::make_shared<LyapunovOpts>();
  CLI::App* lya_cmd = app.add_subcommand("lyapunov", "largest Lyapunov exponent estimate");
  lya_cmd->add_option("--dim", lya->dim, "2: full map, 1: prey-axis map");
  lya_cmd->add_option("--a", lya->a, "prey growth parameter");
  lya_cmd->add_option("--b", lya->b, "prey self-limitation");
  lya_cmd->add_option("--c", lya->c, "predation coefficient");
  lya_cmd->add_option("--d", lya->d, "predator growth parameter");
  lya_cmd->add_option("--alpha", lya->alpha, "predator crowding coefficient");
  lya_cmd->add_option("--x0", lya->x0, "initial prey density");
  lya_cmd->add_option("--y0", lya->y0, "initial predator density");
  lya_cmd->add_option("--steps", lya->steps, "total iterations");
  lya_cmd->add_option("--transient", lya->transient, "steps excluded from the average");
  lya_cmd->add_option("--renorm-interval", lya->renorm_interval,
                      "steps between tangent renormalizations");
  add_common(lya_cmd, lya->output, lya->format, lya->config, lya->write_config,
             kReportFormats);
  lya_cmd->callback([&, lya] { guard([&] { return run_lyapunov(*lya_cmd, *lya); }); });

  // conjugacy
  auto con = std::make_shared<ConjugacyOpts>();
  CLI::App* con_cmd = app.add_subcommand("conjugacy", "affine conjugacy to the quadratic family");
  con_cmd->add_option("--a", con->a, "prey growth parameter");
  con_cmd->add_option("--b", con->b, "prey self-limitation");
  add_common(con_cmd, con->output, con->format, con->config, con->write_config,
             kReportFormats);
  con_cmd->callback([&, con] { guard([&] { return run_conjugacy(*con_cmd, *con); }); });

  // invariant-check
  auto inv = std::make_shared<InvariantOpts>();
  CLI::App* inv_cmd = app.add_subcommand("invariant-check", "Monte-Carlo invariance check");
  inv_cmd->add_option("--set", inv->set, "which set to check (M1 or M2)");
  inv_cmd->add_option("--a", inv->a, "prey growth parameter");
  inv_cmd->add_option("--b", inv->b, "prey self-limitation");
  inv_cmd->add_option("--c", inv->c, "predation coefficient");
  inv_cmd->add_option("--d", inv->d, "predator growth parameter");
  inv_cmd->add_option("--alpha", inv->alpha, "predator crowding coefficient");
  inv_cmd->add_option("--samples", inv->samples, "number of sampled states");
  inv_cmd->add_option("--seed", inv->seed, "RNG seed (required; no hidden entropy)");
  add_common(inv_cmd, inv->output, inv->format, inv->config, inv->write_config,
             kReportFormats);
  inv_cmd->callback([&, inv] { guard([&] { return run_invariant_check(*inv_cmd, *inv); }); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return rc;
}
