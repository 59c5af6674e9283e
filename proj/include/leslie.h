/* C interface to the discrete-time prey-predator map library.
 *
 * All functions return a leslie_status; LESLIE_OK means the output
 * parameters were filled. On failure leslie_last_error() describes the
 * problem (the string is thread-local and valid until the next failing
 * call on the same thread). Handles returned through ** out-parameters
 * are owned by the caller and released with the matching *_free call.
 *
 * An orbit leaving the phase domain (x' <= 0, y' < 0, or prey underflow)
 * is a normal result, reported through leslie_step_result / trajectory
 * accessors, not an error status. The one exception is a Lyapunov orbit
 * dying before transient + 100 steps, which yields
 * LESLIE_ERR_ORBIT_ESCAPED with the partial estimate still written.
 */

#ifndef LESLIE_H
#define LESLIE_H

#include <stdint.h>

#if defined(_WIN32)
#define LESLIE_API __declspec(dllexport)
#else
#define LESLIE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum leslie_status {
  LESLIE_OK = 0,
  LESLIE_ERR_INVALID_ARGUMENT = 1,
  LESLIE_ERR_INVALID_PARAMS = 2,
  LESLIE_ERR_NOT_A_FIXED_POINT = 3,
  LESLIE_ERR_DEGENERATE_CONJUGACY = 4,
  LESLIE_ERR_NO_PREIMAGE = 5,
  LESLIE_ERR_HYPOTHESIS_VIOLATION = 6,
  LESLIE_ERR_INSUFFICIENT_DATA = 7,
  LESLIE_ERR_ORBIT_ESCAPED = 8,
  LESLIE_ERR_INTERNAL = 9
} leslie_status;

LESLIE_API const char* leslie_status_name(int status);
LESLIE_API const char* leslie_last_error(void);

/* ---- model ---- */

typedef struct leslie_params leslie_params; /* opaque, validated at creation */

typedef struct leslie_state {
  double x, y;
} leslie_state;

typedef struct leslie_jacobian {
  double j11, j12, j21, j22;
} leslie_jacobian;

typedef enum leslie_domain_violation {
  LESLIE_EXIT_NONE = 0,
  LESLIE_EXIT_PREY_NONPOSITIVE = 1,
  LESLIE_EXIT_PREDATOR_NEGATIVE = 2,
  LESLIE_EXIT_PREY_UNDERFLOW = 3
} leslie_domain_violation;

typedef struct leslie_step_result {
  int exited;         /* nonzero when the image left the domain */
  leslie_state next;  /* valid when exited == 0 */
  double raw_x, raw_y;
  int violation;      /* leslie_domain_violation */
} leslie_step_result;

/* Requires a > 1, b > 0, c > 0, d > 1, alpha > 0. */
LESLIE_API leslie_status leslie_params_create(double a, double b, double c, double d,
                                              double alpha, leslie_params** out);
LESLIE_API void leslie_params_free(leslie_params* p);
LESLIE_API leslie_status leslie_params_get(const leslie_params* p, double* a, double* b,
                                           double* c, double* d, double* alpha);

LESLIE_API leslie_status leslie_step(const leslie_params* p, leslie_state s,
                                     leslie_step_result* out);
LESLIE_API leslie_status leslie_jacobian_at(const leslie_params* p, leslie_state s,
                                            leslie_jacobian* out);
LESLIE_API const char* leslie_domain_violation_name(int violation);

/* ---- invariant sets ---- */

typedef enum leslie_invariant_set { LESLIE_SET_M1 = 0, LESLIE_SET_M2 = 1 } leslie_invariant_set;

typedef enum leslie_condition_branch {
  LESLIE_BRANCH_NONE = 0,
  LESLIE_BRANCH_CASE1 = 1, /* 1 < d <= 2, whole wedge sampled */
  LESLIE_BRANCH_CASE2 = 2  /* d < 4a-3, prey kept below the x-bound */
} leslie_condition_branch;

typedef struct leslie_invariance_verdict {
  int set_id;
  int branch;
  int holds;
  int has_witness;
  leslie_state witness; /* a member whose image left the set, when !holds */
  int64_t n_samples;
} leslie_invariance_verdict;

LESLIE_API leslie_status leslie_in_m1(const leslie_params* p, leslie_state s, int* member);
LESLIE_API leslie_status leslie_in_m2(const leslie_params* p, leslie_state s, int* member);
/* *defined is 0 and *bound untouched when d >= 4a-3. */
LESLIE_API leslie_status leslie_m2_condition2_xbound(const leslie_params* p, int* defined,
                                                     double* bound);
/* Deterministic for a fixed seed; sample i draws from a splitmix64 stream
 * indexed by (seed, 2i) and (seed, 2i+1). */
LESLIE_API leslie_status leslie_verify_invariance(const leslie_params* p, int set_id,
                                                  int64_t n_samples, uint64_t seed,
                                                  leslie_invariance_verdict* out);
LESLIE_API const char* leslie_condition_branch_name(int branch);

/* ---- prey-axis map ---- */

LESLIE_API double leslie_f1d(double a, double b, double x);
LESLIE_API double leslie_f1d_deriv(double a, double b, double x);

typedef struct leslie_conjugacy_map {
  double p, q, mu; /* h(x) = p x + q, mu = 3 - a */
} leslie_conjugacy_map;

LESLIE_API leslie_status leslie_conjugacy(double a, double b, leslie_conjugacy_map* out);

typedef struct leslie_cycle2_report {
  double p1, p2;
  double multiplier; /* f'(p1) f'(p2) = -a^2 + 4a + 1 */
  int attracting;
} leslie_cycle2_report;

/* *exists is 0 for a <= 4 (no proper 2-cycle) and out is untouched. */
LESLIE_API leslie_status leslie_cycle2(double a, double b, int* exists,
                                       leslie_cycle2_report* out);

LESLIE_API leslie_status leslie_p0_preimage(double a, double b, double* out);

typedef enum leslie_regime {
  LESLIE_REGIME_EXTINCTION = 0,
  LESLIE_REGIME_FIXED_POINT = 1,
  LESLIE_REGIME_PERIOD2 = 2,
  LESLIE_REGIME_PERIOD4 = 3,
  LESLIE_REGIME_PERIOD8 = 4,
  LESLIE_REGIME_UNDETERMINED_GAP = 5,
  LESLIE_REGIME_CHAOTIC = 6
} leslie_regime;

LESLIE_API leslie_status leslie_regime_1d(double a, int* regime);
LESLIE_API const char* leslie_regime_name(int regime);

/* ---- fixed points ---- */

typedef enum leslie_fixed_point_id {
  LESLIE_FP_LAMBDA1 = 0,
  LESLIE_FP_LAMBDA2 = 1
} leslie_fixed_point_id;

typedef enum leslie_stability {
  LESLIE_STAB_NONHYPERBOLIC = 0,
  LESLIE_STAB_ATTRACTIVE = 1,
  LESLIE_STAB_REPELLER = 2,
  LESLIE_STAB_SADDLE = 3
} leslie_stability;

typedef struct leslie_fixed_point_report {
  int id;
  leslie_state location;
  int exists;
  const char* reason; /* static string, never freed */
  double eig1_re, eig1_im, eig2_re, eig2_im;
  double trace, det, discriminant;
  int classification; /* leslie_stability */
} leslie_fixed_point_report;

/* Fills up to two reports with the fixed points that exist; *count may be 0. */
LESLIE_API leslie_status leslie_fixed_points(const leslie_params* p,
                                             leslie_fixed_point_report out[2], int* count);
LESLIE_API leslie_status leslie_classify_lambda1(const leslie_params* p,
                                                 leslie_fixed_point_report* out);
LESLIE_API leslie_status leslie_classify_lambda2(const leslie_params* p,
                                                 leslie_fixed_point_report* out);
LESLIE_API const char* leslie_stability_name(int classification);
LESLIE_API const char* leslie_fixed_point_id_name(int id);

/* ---- orbits ---- */

typedef struct leslie_trajectory leslie_trajectory; /* opaque */

typedef enum leslie_termination {
  LESLIE_TERM_MAX_STEPS = 0,
  LESLIE_TERM_CONVERGED = 1,
  LESLIE_TERM_CYCLE = 2,
  LESLIE_TERM_DOMAIN_EXIT = 3
} leslie_termination;

LESLIE_API leslie_status leslie_iterate(const leslie_params* p, leslie_state s0, int64_t n,
                                        leslie_trajectory** out);
LESLIE_API void leslie_trajectory_free(leslie_trajectory* t);
LESLIE_API int64_t leslie_trajectory_length(const leslie_trajectory* t);
LESLIE_API leslie_status leslie_trajectory_state(const leslie_trajectory* t, int64_t i,
                                                 leslie_state* out);
LESLIE_API int leslie_trajectory_termination(const leslie_trajectory* t);
LESLIE_API int64_t leslie_trajectory_exit_step(const leslie_trajectory* t); /* -1 if none */
LESLIE_API int leslie_trajectory_exit_violation(const leslie_trajectory* t);
LESLIE_API leslie_status leslie_trajectory_exit_raw(const leslie_trajectory* t, double* raw_x,
                                                    double* raw_y);
LESLIE_API const char* leslie_termination_name(int termination);

/* Minimal period over the tail of the trajectory; writes at most
 * points_capacity cycle states. *found is 0 when no period qualifies. */
LESLIE_API leslie_status leslie_detect_limit(const leslie_trajectory* t, double tol,
                                             int max_period, int64_t transient, int* found,
                                             int* period, double* residual,
                                             leslie_state* points, int points_capacity);

/* ---- parameter sweep ---- */

typedef struct leslie_sweep leslie_sweep; /* opaque */

typedef enum leslie_swept_param {
  LESLIE_SWEEP_A = 0,
  LESLIE_SWEEP_B = 1,
  LESLIE_SWEEP_C = 2,
  LESLIE_SWEEP_D = 3,
  LESLIE_SWEEP_ALPHA = 4
} leslie_swept_param;

/* max_threads 0 lets the library pick; rows are always assembled in grid
 * order regardless of the number of workers. */
LESLIE_API leslie_status leslie_bifurcation_sweep(const leslie_params* base, int swept,
                                                  double from, double to, int points,
                                                  leslie_state s0, int64_t transient,
                                                  int64_t samples, int max_threads,
                                                  leslie_sweep** out);
LESLIE_API void leslie_sweep_free(leslie_sweep* s);
LESLIE_API int64_t leslie_sweep_rows(const leslie_sweep* s);
LESLIE_API double leslie_sweep_value(const leslie_sweep* s, int64_t row);
LESLIE_API int64_t leslie_sweep_samples(const leslie_sweep* s, int64_t row);
LESLIE_API leslie_status leslie_sweep_sample(const leslie_sweep* s, int64_t row, int64_t i,
                                             leslie_state* out);
LESLIE_API int leslie_sweep_row_exited(const leslie_sweep* s, int64_t row);
LESLIE_API int64_t leslie_sweep_row_exit_step(const leslie_sweep* s, int64_t row);

/* ---- Lyapunov exponents ---- */

typedef struct leslie_lyapunov_estimate {
  double lambda_max;
  int64_t n_steps;
  int64_t transient;
  int renorm_interval;
  int terminated_early;
} leslie_lyapunov_estimate;

/* Requires n >= transient + 100 and renorm_interval >= 1. On
 * LESLIE_ERR_ORBIT_ESCAPED the partial estimate is still written. */
LESLIE_API leslie_status leslie_lyapunov_max(const leslie_params* p, leslie_state s0,
                                             int64_t n, int64_t transient,
                                             int renorm_interval,
                                             leslie_lyapunov_estimate* out);
LESLIE_API leslie_status leslie_lyapunov_1d(double a, double b, double x0, int64_t n,
                                            int64_t transient,
                                            leslie_lyapunov_estimate* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LESLIE_H */
