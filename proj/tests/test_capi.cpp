// Exercises the shared-library C surface end to end: every handle type,
// the error-code mapping and the report structs.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "leslie.h"
#include "test_util.hpp"

namespace {

struct Params {
  leslie_params* p = nullptr;
  Params(double a, double b, double c, double d, double alpha) {
    REQUIRE(leslie_params_create(a, b, c, d, alpha, &p) == LESLIE_OK);
  }
  ~Params() { leslie_params_free(p); }
};

}  // namespace

TEST_CASE("parameter handles") {
  Params p(3, 1, 2, 4.5, 2);
  double a, b, c, d, alpha;
  REQUIRE(leslie_params_get(p.p, &a, &b, &c, &d, &alpha) == LESLIE_OK);
  CHECK(a == 3.0);
  CHECK(alpha == 2.0);

  leslie_params* bad = nullptr;
  CHECK(leslie_params_create(1.0, 1, 1, 2, 1, &bad) == LESLIE_ERR_INVALID_PARAMS);
  CHECK(bad == nullptr);
  CHECK(std::strlen(leslie_last_error()) > 0);
  CHECK(std::string(leslie_status_name(LESLIE_ERR_INVALID_PARAMS)) == "invalid-params");
}

TEST_CASE("step and jacobian") {
  Params p(3, 1, 2, 4.5, 2);
  leslie_step_result r;
  REQUIRE(leslie_step(p.p, leslie_state{0.25, 0.3}, &r) == LESLIE_OK);
  CHECK_FALSE(r.exited);
  CHECK(close_rel(r.next.x, 0.2875, 1e-14));
  CHECK(close_rel(r.next.y, 0.33, 1e-14));

  REQUIRE(leslie_step(p.p, leslie_state{2.5, 0.0}, &r) == LESLIE_OK);
  CHECK(r.exited);
  CHECK(r.violation == LESLIE_EXIT_PREY_NONPOSITIVE);
  CHECK(std::string(leslie_domain_violation_name(r.violation)) == "prey-nonpositive");

  leslie_jacobian j;
  REQUIRE(leslie_jacobian_at(p.p, leslie_state{0.25, 0.3}, &j) == LESLIE_OK);
  CHECK(close_rel(j.j12, -0.5, 1e-14));

  CHECK(leslie_step(p.p, leslie_state{0.0, 0.3}, &r) == LESLIE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("invariant sets") {
  Params p(2, 1, 1, 2, 1);
  int member = 0;
  REQUIRE(leslie_in_m2(p.p, leslie_state{0.3, 0.2}, &member) == LESLIE_OK);
  CHECK(member == 1);
  REQUIRE(leslie_in_m2(p.p, leslie_state{0.1, 0.2}, &member) == LESLIE_OK);
  CHECK(member == 0);
  REQUIRE(leslie_in_m1(p.p, leslie_state{0.5, 0.0}, &member) == LESLIE_OK);
  CHECK(member == 1);

  int defined = 0;
  double bound = 0;
  REQUIRE(leslie_m2_condition2_xbound(p.p, &defined, &bound) == LESLIE_OK);
  CHECK(defined == 1);
  CHECK(close_rel(bound, 2.0 * std::sqrt(3.0) - 3.0, 1e-12));

  leslie_invariance_verdict v;
  REQUIRE(leslie_verify_invariance(p.p, LESLIE_SET_M2, 10000, 42, &v) == LESLIE_OK);
  CHECK(v.holds == 1);
  CHECK(v.branch == LESLIE_BRANCH_CASE2);
  CHECK(v.has_witness == 0);
  CHECK(std::string(leslie_condition_branch_name(v.branch)) == "case-2");

  Params q(3, 1, 1, 2, 1);
  CHECK(leslie_verify_invariance(q.p, LESLIE_SET_M2, 100, 1, &v) ==
        LESLIE_ERR_HYPOTHESIS_VIOLATION);
}

TEST_CASE("prey-axis helpers") {
  CHECK(leslie_f1d(3, 1, 1.0) == 1.0);
  CHECK(leslie_f1d_deriv(3, 1, 1.0) == 0.0);

  leslie_conjugacy_map m;
  REQUIRE(leslie_conjugacy(2.5, 1, &m) == LESLIE_OK);
  CHECK(m.p == 0.5);
  CHECK(m.q == 0.5);
  CHECK(m.mu == 0.5);
  CHECK(leslie_conjugacy(3.0, 1, &m) == LESLIE_ERR_DEGENERATE_CONJUGACY);

  int exists = 0;
  leslie_cycle2_report cyc;
  REQUIRE(leslie_cycle2(4.3, 1, &exists, &cyc) == LESLIE_OK);
  CHECK(exists == 1);
  CHECK(close_rel(cyc.p1, 1.5821, 1e-4));
  CHECK(cyc.attracting == 1);
  REQUIRE(leslie_cycle2(3.5, 1, &exists, &cyc) == LESLIE_OK);
  CHECK(exists == 0);

  double pre = 0;
  REQUIRE(leslie_p0_preimage(3.5, 1, &pre) == LESLIE_OK);
  CHECK(close_rel(pre, 1.0, 1e-12));

  int regime = -1;
  REQUIRE(leslie_regime_1d(4.3, &regime) == LESLIE_OK);
  CHECK(regime == LESLIE_REGIME_PERIOD2);
  CHECK(std::string(leslie_regime_name(regime)) == "period-2");
  REQUIRE(leslie_regime_1d(5.5, &regime) == LESLIE_OK);
  CHECK(regime == LESLIE_REGIME_CHAOTIC);
  CHECK(leslie_regime_1d(0.5, &regime) == LESLIE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("fixed-point reports") {
  Params p(3, 2, 5, 4, 1);
  leslie_fixed_point_report reports[2];
  int count = 0;
  REQUIRE(leslie_fixed_points(p.p, reports, &count) == LESLIE_OK);
  REQUIRE(count == 2);
  CHECK(reports[0].id == LESLIE_FP_LAMBDA1);
  CHECK(std::string(leslie_fixed_point_id_name(reports[1].id)) == "lambda2");
  CHECK(close_rel(reports[1].location.x, 1.0 / 12.0, 1e-12));
  CHECK(close_rel(reports[1].location.y, 1.0 / 6.0, 1e-12));
  CHECK(reports[1].classification == LESLIE_STAB_ATTRACTIVE);
  CHECK(std::string(leslie_stability_name(reports[1].classification)) == "attractive");
  CHECK(reports[1].exists == 1);
  CHECK(std::strlen(reports[1].reason) > 0);

  leslie_fixed_point_report single;
  Params collapsed(3, 1, 1, 2, 1);
  CHECK(leslie_classify_lambda2(collapsed.p, &single) == LESLIE_ERR_NOT_A_FIXED_POINT);
  REQUIRE(leslie_classify_lambda1(collapsed.p, &single) == LESLIE_OK);
  CHECK(single.classification == LESLIE_STAB_NONHYPERBOLIC);  // d = 2
}

TEST_CASE("trajectory handles and cycle detection") {
  Params p(3, 1, 2, 4.5, 2);
  leslie_trajectory* t = nullptr;
  REQUIRE(leslie_iterate(p.p, leslie_state{0.25, 0.3}, 3000, &t) == LESLIE_OK);
  REQUIRE(t != nullptr);
  CHECK(leslie_trajectory_length(t) == 3001);
  CHECK(leslie_trajectory_termination(t) == LESLIE_TERM_MAX_STEPS);
  CHECK(leslie_trajectory_exit_step(t) == -1);

  leslie_state s;
  REQUIRE(leslie_trajectory_state(t, 0, &s) == LESLIE_OK);
  CHECK(s.x == 0.25);
  CHECK(leslie_trajectory_state(t, 99999, &s) == LESLIE_ERR_INVALID_ARGUMENT);

  int found = 0, period = 0;
  double residual = 0;
  std::vector<leslie_state> points(64);
  REQUIRE(leslie_detect_limit(t, 1e-6, 64, 1000, &found, &period, &residual, points.data(),
                              64) == LESLIE_OK);
  CHECK(found == 1);
  CHECK(period == 1);
  CHECK(close_rel(points[0].x, 2.0 / 7.0, 1e-6));

  leslie_trajectory* small = nullptr;
  REQUIRE(leslie_iterate(p.p, leslie_state{0.25, 0.3}, 50, &small) == LESLIE_OK);
  CHECK(leslie_detect_limit(small, 1e-6, 64, 1000, &found, &period, &residual, points.data(),
                            64) == LESLIE_ERR_INSUFFICIENT_DATA);
  leslie_trajectory_free(small);
  leslie_trajectory_free(t);
}

TEST_CASE("sweep handles") {
  Params p(4.3, 1, 2, 2, 4);
  leslie_sweep* sw = nullptr;
  REQUIRE(leslie_bifurcation_sweep(p.p, LESLIE_SWEEP_A, 4.3, 4.3, 1, leslie_state{1.2, 0.2},
                                   1000, 8, 0, &sw) == LESLIE_OK);
  REQUIRE(sw != nullptr);
  CHECK(leslie_sweep_rows(sw) == 1);
  CHECK(leslie_sweep_value(sw, 0) == 4.3);
  CHECK(leslie_sweep_samples(sw, 0) == 8);
  CHECK(leslie_sweep_row_exited(sw, 0) == 0);
  CHECK(leslie_sweep_row_exit_step(sw, 0) == -1);

  // matches the trajectory tail state for state
  leslie_trajectory* t = nullptr;
  REQUIRE(leslie_iterate(p.p, leslie_state{1.2, 0.2}, 1008, &t) == LESLIE_OK);
  for (int i = 0; i < 8; ++i) {
    leslie_state a, b;
    REQUIRE(leslie_sweep_sample(sw, 0, i, &a) == LESLIE_OK);
    REQUIRE(leslie_trajectory_state(t, 1001 + i, &b) == LESLIE_OK);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
  }
  leslie_trajectory_free(t);
  CHECK(leslie_sweep_sample(sw, 0, 99, nullptr) == LESLIE_ERR_INVALID_ARGUMENT);
  leslie_sweep_free(sw);

  CHECK(leslie_bifurcation_sweep(p.p, 42, 4.3, 4.3, 1, leslie_state{1.2, 0.2}, 1000, 8, 0,
                                 &sw) == LESLIE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("Lyapunov estimates through the C API") {
  Params p(3, 1, 2, 4.5, 2);
  leslie_lyapunov_estimate est;
  REQUIRE(leslie_lyapunov_max(p.p, leslie_state{0.25, 0.3}, 10000, 1000, 1, &est) == LESLIE_OK);
  CHECK(est.lambda_max < 0.0);
  CHECK(est.n_steps == 9000);
  CHECK(est.terminated_early == 0);

  REQUIRE(leslie_lyapunov_1d(4.8, 1, 0.3, 20000, 1000, &est) == LESLIE_OK);
  CHECK(est.lambda_max > 0.3);

  // escape before the grace window: error code plus the partial estimate
  CHECK(leslie_lyapunov_1d(5.5, 1, 0.3, 10000, 1000, &est) == LESLIE_ERR_ORBIT_ESCAPED);
  CHECK(est.terminated_early == 1);
  CHECK(est.n_steps == 0);
  CHECK(std::strlen(leslie_last_error()) > 0);

  CHECK(leslie_lyapunov_max(p.p, leslie_state{0.25, 0.3}, 99, 0, 1, &est) ==
        LESLIE_ERR_INVALID_ARGUMENT);
}
