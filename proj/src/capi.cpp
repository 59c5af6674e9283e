#include "leslie.h"

#include <cstring>
#include <exception>
#include <string>

#include "leslie/conjugacy.hpp"
#include "leslie/fixed_points.hpp"
#include "leslie/invariants.hpp"
#include "leslie/lyapunov.hpp"
#include "leslie/model.hpp"
#include "leslie/trajectory.hpp"

struct leslie_params {
  leslie::ModelParams p;
};

struct leslie_trajectory {
  leslie::Trajectory t;
};

struct leslie_sweep {
  std::vector<leslie::SweepRow> rows;
};

namespace {

thread_local std::string g_last_error;

leslie_status set_error(leslie_status code, const char* msg) {
  g_last_error = msg;
  return code;
}

leslie_status map_code(leslie::ErrorCode code) {
  using leslie::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return LESLIE_ERR_INVALID_ARGUMENT;
    case ErrorCode::invalid_params: return LESLIE_ERR_INVALID_PARAMS;
    case ErrorCode::not_a_fixed_point: return LESLIE_ERR_NOT_A_FIXED_POINT;
    case ErrorCode::degenerate_conjugacy: return LESLIE_ERR_DEGENERATE_CONJUGACY;
    case ErrorCode::no_preimage: return LESLIE_ERR_NO_PREIMAGE;
    case ErrorCode::hypothesis_violation: return LESLIE_ERR_HYPOTHESIS_VIOLATION;
    case ErrorCode::insufficient_data: return LESLIE_ERR_INSUFFICIENT_DATA;
    case ErrorCode::orbit_escaped: return LESLIE_ERR_ORBIT_ESCAPED;
  }
  return LESLIE_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
leslie_status guarded(Fn&& fn) {
  try {
    fn();
    return LESLIE_OK;
  } catch (const leslie::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LESLIE_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return LESLIE_ERR_INTERNAL;
  }
}

leslie_state to_c(const leslie::State& s) { return leslie_state{s.x, s.y}; }

leslie::State to_cpp(leslie_state s) { return leslie::State{s.x, s.y}; }

leslie_status require_state(leslie_state s) {
  if (!leslie::is_valid_state(to_cpp(s)))
    return set_error(LESLIE_ERR_INVALID_ARGUMENT, "state must have x > 0 and y >= 0");
  return LESLIE_OK;
}

// The reason strings come from a fixed set; hand out stable storage.
const char* intern_reason(const std::string& reason) {
  static const char* const known[] = {
      "a > 2",
      "a > 2, d > 2, K > 0",
  };
  for (const char* k : known)
    if (reason == k) return k;
  return "";
}

void to_c_report(const leslie::FixedPointReport& in, leslie_fixed_point_report* out) {
  out->id = in.id == leslie::FixedPointId::lambda1 ? LESLIE_FP_LAMBDA1 : LESLIE_FP_LAMBDA2;
  out->location = to_c(in.location);
  out->exists = in.exists ? 1 : 0;
  out->reason = intern_reason(in.reason);
  out->eig1_re = in.eig1.real();
  out->eig1_im = in.eig1.imag();
  out->eig2_re = in.eig2.real();
  out->eig2_im = in.eig2.imag();
  out->trace = in.trace;
  out->det = in.det;
  out->discriminant = in.discriminant;
  out->classification = static_cast<int>(in.classification);
}

}  // namespace

extern "C" {

const char* leslie_status_name(int status) {
  switch (status) {
    case LESLIE_OK: return "ok";
    case LESLIE_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case LESLIE_ERR_INVALID_PARAMS: return "invalid-params";
    case LESLIE_ERR_NOT_A_FIXED_POINT: return "not-a-fixed-point";
    case LESLIE_ERR_DEGENERATE_CONJUGACY: return "degenerate-conjugacy";
    case LESLIE_ERR_NO_PREIMAGE: return "no-preimage";
    case LESLIE_ERR_HYPOTHESIS_VIOLATION: return "hypothesis-violation";
    case LESLIE_ERR_INSUFFICIENT_DATA: return "insufficient-data";
    case LESLIE_ERR_ORBIT_ESCAPED: return "orbit-escaped";
    case LESLIE_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* leslie_last_error(void) { return g_last_error.c_str(); }

leslie_status leslie_params_create(double a, double b, double c, double d, double alpha,
                                   leslie_params** out) {
  if (!out) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null output pointer");
  *out = nullptr;
  return guarded([&] { *out = new leslie_params{leslie::ModelParams(a, b, c, d, alpha)}; });
}

void leslie_params_free(leslie_params* p) { delete p; }

leslie_status leslie_params_get(const leslie_params* p, double* a, double* b, double* c,
                                double* d, double* alpha) {
  if (!p || !a || !b || !c || !d || !alpha)
    return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  *a = p->p.a;
  *b = p->p.b;
  *c = p->p.c;
  *d = p->p.d;
  *alpha = p->p.alpha;
  return LESLIE_OK;
}

leslie_status leslie_step(const leslie_params* p, leslie_state s, leslie_step_result* out) {
  if (!p || !out) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  if (leslie_status st = require_state(s)) return st;
  return guarded([&] {
    const leslie::StepResult r = leslie::step(p->p, to_cpp(s));
    out->exited = r.exited() ? 1 : 0;
    out->next = to_c(r.next);
    out->raw_x = r.raw_x;
    out->raw_y = r.raw_y;
    out->violation = static_cast<int>(r.violation);
  });
}

leslie_status leslie_jacobian_at(const leslie_params* p, leslie_state s, leslie_jacobian* out) {
  if (!p || !out) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  if (leslie_status st = require_state(s)) return st;
  return guarded([&] {
    const leslie::JacobianMatrix j = leslie::jacobian(p->p, to_cpp(s));
    *out = leslie_jacobian{j.j11, j.j12, j.j21, j.j22};
  });
}

const char* leslie_domain_violation_name(int violation) {
  return leslie::domain_violation_name(static_cast<leslie::DomainViolation>(violation));
}

leslie_status leslie_in_m1(const leslie_params* p, leslie_state s, int* member) {
  if (!p || !member) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  if (leslie_status st = require_state(s)) return st;
  *member = leslie::in_m1(p->p, to_cpp(s)) ? 1 : 0;
  return LESLIE_OK;
}

leslie_status leslie_in_m2(const leslie_params* p, leslie_state s, int* member) {
  if (!p || !member) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  if (leslie_status st = require_state(s)) return st;
  *member = leslie::in_m2(p->p, to_cpp(s)) ? 1 : 0;
  return LESLIE_OK;
}

leslie_status leslie_m2_condition2_xbound(const leslie_params* p, int* defined, double* bound) {
  if (!p || !defined || !bound) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  const auto b = leslie::m2_condition2_xbound(p->p);
  *defined = b.has_value() ? 1 : 0;
  if (b) *bound = *b;
  return LESLIE_OK;
}

leslie_status leslie_verify_invariance(const leslie_params* p, int set_id, int64_t n_samples,
                                       uint64_t seed, leslie_invariance_verdict* out) {
  if (!p || !out) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  if (set_id != LESLIE_SET_M1 && set_id != LESLIE_SET_M2)
    return set_error(LESLIE_ERR_INVALID_ARGUMENT, "set_id must be LESLIE_SET_M1 or LESLIE_SET_M2");
  return guarded([&] {
    const auto v = leslie::verify_invariance(
        p->p, set_id == LESLIE_SET_M1 ? leslie::InvariantSet::m1 : leslie::InvariantSet::m2,
        n_samples, seed);
    out->set_id = set_id;
    out->branch = static_cast<int>(v.branch);
    out->holds = v.holds ? 1 : 0;
    out->has_witness = v.witness.has_value() ? 1 : 0;
    out->witness = v.witness ? to_c(*v.witness) : leslie_state{0.0, 0.0};
    out->n_samples = v.n_samples;
  });
}

const char* leslie_condition_branch_name(int branch) {
  return leslie::condition_branch_name(static_cast<leslie::ConditionBranch>(branch));
}

double leslie_f1d(double a, double b, double x) { return leslie::f1d(a, b, x); }

double leslie_f1d_deriv(double a, double b, double x) { return leslie::f1d_deriv(a, b, x); }

leslie_status leslie_conjugacy(double a, double b, leslie_conjugacy_map* out) {
  if (!out) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  return guarded([&] {
    const leslie::ConjugacyMap m = leslie::conjugacy(a, b);
    *out = leslie_conjugacy_map{m.p, m.q, m.mu};
  });
}

leslie_status leslie_cycle2(double a, double b, int* exists, leslie_cycle2_report* out) {
  if (!exists || !out) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  return guarded([&] {
    const auto r = leslie::cycle2(a, b);
    *exists = r.has_value() ? 1 : 0;
    if (r) *out = leslie_cycle2_report{r->p1, r->p2, r->multiplier, r->attracting ? 1 : 0};
  });
}

leslie_status leslie_p0_preimage(double a, double b, double* out) {
  if (!out) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  return guarded([&] { *out = leslie::p0_preimage(a, b); });
}

leslie_status leslie_regime_1d(double a, int* regime) {
  if (!regime) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  return guarded([&] { *regime = static_cast<int>(leslie::regime_1d(a)); });
}

const char* leslie_regime_name(int regime) {
  return leslie::regime_name(static_cast<leslie::RegimeLabel>(regime));
}

leslie_status leslie_fixed_points(const leslie_params* p, leslie_fixed_point_report out[2],
                                  int* count) {
  if (!p || !out || !count) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  return guarded([&] {
    const auto reports = leslie::fixed_points(p->p);
    *count = static_cast<int>(reports.size());
    for (std::size_t i = 0; i < reports.size(); ++i) to_c_report(reports[i], &out[i]);
  });
}

leslie_status leslie_classify_lambda1(const leslie_params* p, leslie_fixed_point_report* out) {
  if (!p || !out) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  return guarded([&] { to_c_report(leslie::classify_lambda1(p->p), out); });
}

leslie_status leslie_classify_lambda2(const leslie_params* p, leslie_fixed_point_report* out) {
  if (!p || !out) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  return guarded([&] { to_c_report(leslie::classify_lambda2(p->p), out); });
}

const char* leslie_stability_name(int classification) {
  return leslie::stability_name(static_cast<leslie::Stability>(classification));
}

const char* leslie_fixed_point_id_name(int id) {
  return leslie::fixed_point_name(id == LESLIE_FP_LAMBDA1 ? leslie::FixedPointId::lambda1
                                                          : leslie::FixedPointId::lambda2);
}

leslie_status leslie_iterate(const leslie_params* p, leslie_state s0, int64_t n,
                             leslie_trajectory** out) {
  if (!p || !out) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  *out = nullptr;
  return guarded([&] { *out = new leslie_trajectory{leslie::iterate(p->p, to_cpp(s0), n)}; });
}

void leslie_trajectory_free(leslie_trajectory* t) { delete t; }

int64_t leslie_trajectory_length(const leslie_trajectory* t) {
  return t ? static_cast<int64_t>(t->t.states.size()) : 0;
}

leslie_status leslie_trajectory_state(const leslie_trajectory* t, int64_t i, leslie_state* out) {
  if (!t || !out) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  if (i < 0 || i >= static_cast<int64_t>(t->t.states.size()))
    return set_error(LESLIE_ERR_INVALID_ARGUMENT, "trajectory index out of range");
  *out = to_c(t->t.states[static_cast<std::size_t>(i)]);
  return LESLIE_OK;
}

int leslie_trajectory_termination(const leslie_trajectory* t) {
  return t ? static_cast<int>(t->t.termination) : LESLIE_TERM_MAX_STEPS;
}

int64_t leslie_trajectory_exit_step(const leslie_trajectory* t) {
  return t ? t->t.exit_step : -1;
}

int leslie_trajectory_exit_violation(const leslie_trajectory* t) {
  return t ? static_cast<int>(t->t.exit_violation) : LESLIE_EXIT_NONE;
}

leslie_status leslie_trajectory_exit_raw(const leslie_trajectory* t, double* raw_x,
                                         double* raw_y) {
  if (!t || !raw_x || !raw_y) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  *raw_x = t->t.exit_raw_x;
  *raw_y = t->t.exit_raw_y;
  return LESLIE_OK;
}

const char* leslie_termination_name(int termination) {
  return leslie::termination_name(static_cast<leslie::Termination>(termination));
}

leslie_status leslie_detect_limit(const leslie_trajectory* t, double tol, int max_period,
                                  int64_t transient, int* found, int* period, double* residual,
                                  leslie_state* points, int points_capacity) {
  if (!t || !found || !period || !residual)
    return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  if (points_capacity > 0 && !points)
    return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null points buffer");
  return guarded([&] {
    const auto det = leslie::detect_limit(t->t, tol, max_period, transient);
    *found = det.has_value() ? 1 : 0;
    if (!det) return;
    *period = det->period;
    *residual = det->residual;
    const int n = std::min<int>(points_capacity, det->period);
    for (int i = 0; i < n; ++i) points[i] = to_c(det->points[static_cast<std::size_t>(i)]);
  });
}

leslie_status leslie_bifurcation_sweep(const leslie_params* base, int swept, double from,
                                       double to, int points, leslie_state s0,
                                       int64_t transient, int64_t samples, int max_threads,
                                       leslie_sweep** out) {
  if (!base || !out) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  if (swept < LESLIE_SWEEP_A || swept > LESLIE_SWEEP_ALPHA)
    return set_error(LESLIE_ERR_INVALID_ARGUMENT, "unknown swept parameter");
  *out = nullptr;
  return guarded([&] {
    leslie::SweepSpec spec{base->p, static_cast<leslie::SweptParam>(swept), from, to, points,
                           to_cpp(s0)};
    *out = new leslie_sweep{leslie::bifurcation_sweep(spec, transient, samples, max_threads)};
  });
}

void leslie_sweep_free(leslie_sweep* s) { delete s; }

int64_t leslie_sweep_rows(const leslie_sweep* s) {
  return s ? static_cast<int64_t>(s->rows.size()) : 0;
}

double leslie_sweep_value(const leslie_sweep* s, int64_t row) {
  if (!s || row < 0 || row >= static_cast<int64_t>(s->rows.size())) return 0.0;
  return s->rows[static_cast<std::size_t>(row)].value;
}

int64_t leslie_sweep_samples(const leslie_sweep* s, int64_t row) {
  if (!s || row < 0 || row >= static_cast<int64_t>(s->rows.size())) return 0;
  return static_cast<int64_t>(s->rows[static_cast<std::size_t>(row)].samples.size());
}

leslie_status leslie_sweep_sample(const leslie_sweep* s, int64_t row, int64_t i,
                                  leslie_state* out) {
  if (!s || !out) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  if (row < 0 || row >= static_cast<int64_t>(s->rows.size()))
    return set_error(LESLIE_ERR_INVALID_ARGUMENT, "sweep row out of range");
  const auto& r = s->rows[static_cast<std::size_t>(row)];
  if (i < 0 || i >= static_cast<int64_t>(r.samples.size()))
    return set_error(LESLIE_ERR_INVALID_ARGUMENT, "sweep sample out of range");
  *out = to_c(r.samples[static_cast<std::size_t>(i)]);
  return LESLIE_OK;
}

int leslie_sweep_row_exited(const leslie_sweep* s, int64_t row) {
  if (!s || row < 0 || row >= static_cast<int64_t>(s->rows.size())) return 0;
  return s->rows[static_cast<std::size_t>(row)].domain_exit ? 1 : 0;
}

int64_t leslie_sweep_row_exit_step(const leslie_sweep* s, int64_t row) {
  if (!s || row < 0 || row >= static_cast<int64_t>(s->rows.size())) return -1;
  return s->rows[static_cast<std::size_t>(row)].exit_step;
}

leslie_status leslie_lyapunov_max(const leslie_params* p, leslie_state s0, int64_t n,
                                  int64_t transient, int renorm_interval,
                                  leslie_lyapunov_estimate* out) {
  if (!p || !out) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  return guarded([&] {
    try {
      const auto est = leslie::lyapunov_max(p->p, to_cpp(s0), n, transient, renorm_interval);
      *out = leslie_lyapunov_estimate{est.lambda_max, est.n_steps, est.transient,
                                      est.renorm_interval, est.terminated_early ? 1 : 0};
    } catch (const leslie::OrbitEscaped& e) {
      const auto& est = e.partial();
      *out = leslie_lyapunov_estimate{est.lambda_max, est.n_steps, est.transient,
                                      est.renorm_interval, 1};
      throw;
    }
  });
}

leslie_status leslie_lyapunov_1d(double a, double b, double x0, int64_t n, int64_t transient,
                                 leslie_lyapunov_estimate* out) {
  if (!out) return set_error(LESLIE_ERR_INVALID_ARGUMENT, "null pointer");
  return guarded([&] {
    try {
      const auto est = leslie::lyapunov_1d(a, b, x0, n, transient);
      *out = leslie_lyapunov_estimate{est.lambda_max, est.n_steps, est.transient,
                                      est.renorm_interval, est.terminated_early ? 1 : 0};
    } catch (const leslie::OrbitEscaped& e) {
      const auto& est = e.partial();
      *out = leslie_lyapunov_estimate{est.lambda_max, est.n_steps, est.transient,
                                      est.renorm_interval, 1};
      throw;
    }
  });
}

}  // extern "C"
