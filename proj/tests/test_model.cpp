#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>

#include "doctest.h"
#include "leslie/model.hpp"
#include "test_util.hpp"

using namespace leslie;

namespace {

// Independent evaluation of the map, used as the finite-difference oracle.
double raw_x(const ModelParams& p, double x, double y) {
  return x * (p.a - 1.0 - p.b * x - p.c * y);
}
double raw_y(const ModelParams& p, double x, double y) {
  return y * (p.d - 1.0 - p.alpha * y / x);
}

}  // namespace

TEST_CASE("parameters are validated at construction") {
  CHECK_NOTHROW(ModelParams(1.5, 1, 1, 2, 1));
  CHECK_THROWS_AS(ModelParams(1.0, 1, 1, 2, 1), Error);
  CHECK_THROWS_AS(ModelParams(0.5, 1, 1, 2, 1), Error);
  CHECK_THROWS_AS(ModelParams(3, 0.0, 1, 2, 1), Error);
  CHECK_THROWS_AS(ModelParams(3, 1, -1.0, 2, 1), Error);
  CHECK_THROWS_AS(ModelParams(3, 1, 1, 1.0, 1), Error);
  CHECK_THROWS_AS(ModelParams(3, 1, 1, 2, 0.0), Error);
  CHECK_THROWS_AS(ModelParams(std::numeric_limits<double>::quiet_NaN(), 1, 1, 2, 1), Error);

  try {
    ModelParams(1.0, 1, 1, 2, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_params);
  }
}

TEST_CASE("one step, hand-evaluated") {
  // x' = 0.25 * 1.15, y' = 0.3 * 1.1
  ModelParams p(3, 1, 2, 4.5, 2);
  const StepResult r = step(p, State{0.25, 0.3});
  REQUIRE_FALSE(r.exited());
  CHECK(close_rel(r.next.x, 0.2875, 1e-14));
  CHECK(close_rel(r.next.y, 0.33, 1e-14));
}

TEST_CASE("lambda1 is fixed under the step") {
  ModelParams p(3.8, 1, 2, 2, 4);
  const State l1{(p.a - 2.0) / p.b, 0.0};
  const StepResult r = step(p, l1);
  REQUIRE_FALSE(r.exited());
  CHECK(std::abs(r.next.x - l1.x) < 1e-12);
  CHECK(r.next.y == 0.0);
}

TEST_CASE("the prey axis is preserved exactly") {
  TestRng rng(101);
  for (int i = 0; i < 200; ++i) {
    ModelParams p(rng.uniform(1.1, 5.0), rng.uniform(0.2, 2.5), rng.uniform(0.2, 2.5),
                  rng.uniform(1.1, 4.5), rng.uniform(0.2, 2.5));
    const double x = rng.uniform(1e-6, (p.a - 1.0) / p.b * 0.999);
    const StepResult r = step(p, State{x, 0.0});
    CHECK(r.raw_y == 0.0);
    if (!r.exited()) CHECK(r.next.y == 0.0);
  }
}

TEST_CASE("fixed-point residuals stay below 1e-12") {
  TestRng rng(202);
  for (int i = 0; i < 300; ++i) {
    ModelParams p(rng.uniform(2.05, 5.0), rng.uniform(0.1, 3.0), rng.uniform(0.1, 3.0),
                  rng.uniform(1.1, 4.5), rng.uniform(0.1, 3.0));
    const State l1{(p.a - 2.0) / p.b, 0.0};
    const StepResult r1 = step(p, l1);
    REQUIRE_FALSE(r1.exited());
    CHECK(std::abs(r1.next.x - l1.x) < 1e-12);
    CHECK(std::abs(r1.next.y - l1.y) < 1e-12);

    const double K = p.b * p.alpha + p.c * (p.d - 2.0);
    if (p.d > 2.05 && K > 0.0) {
      const State l2{(p.a - 2.0) * p.alpha / K, (p.a - 2.0) * (p.d - 2.0) / K};
      const StepResult r2 = step(p, l2);
      REQUIRE_FALSE(r2.exited());
      CHECK(std::abs(r2.next.x - l2.x) < 1e-12);
      CHECK(std::abs(r2.next.y - l2.y) < 1e-12);
    }
  }
}

TEST_CASE("jacobian entries at the fixed points") {
  // at lambda1: [[3-a, -c(a-2)/b], [0, d-1]]
  {
    ModelParams p(3.8, 1, 2, 2, 4);
    const JacobianMatrix j = jacobian(p, State{1.8, 0.0});
    CHECK(close_rel(j.j11, 3.0 - p.a, 1e-12));
    CHECK(close_rel(j.j12, -p.c * (p.a - 2.0) / p.b, 1e-12));
    CHECK(j.j21 == 0.0);
    CHECK(close_rel(j.j22, p.d - 1.0, 1e-12));
  }
  // at lambda2: [[1-(a-2)b alpha/K, -(a-2)c alpha/K], [(d-2)^2/alpha, 3-d]]
  {
    ModelParams p(3, 1, 2, 4.5, 2);
    const double K = p.b * p.alpha + p.c * (p.d - 2.0);
    const State l2{(p.a - 2.0) * p.alpha / K, (p.a - 2.0) * (p.d - 2.0) / K};
    const JacobianMatrix j = jacobian(p, l2);
    CHECK(close_rel(j.j11, 1.0 - (p.a - 2.0) * p.b * p.alpha / K, 1e-12));
    CHECK(close_rel(j.j12, -(p.a - 2.0) * p.c * p.alpha / K, 1e-12));
    CHECK(close_rel(j.j21, (p.d - 2.0) * (p.d - 2.0) / p.alpha, 1e-12));
    CHECK(close_rel(j.j22, 3.0 - p.d, 1e-12));
  }
  // worked entries at a generic state
  {
    ModelParams p(3.9, 2, 2, 3.6, 3);
    const JacobianMatrix j = jacobian(p, State{0.5, 0.4});
    CHECK(close_rel(j.j11, 2.9 - 4 * 0.5 - 2 * 0.4, 1e-12));
    CHECK(close_rel(j.j12, -2 * 0.5, 1e-12));
    CHECK(close_rel(j.j21, 3 * 0.4 * 0.4 / (0.5 * 0.5), 1e-12));
    CHECK(close_rel(j.j22, 2.6 - 6 * 0.4 / 0.5, 1e-12));
  }
}

TEST_CASE("jacobian agrees with central finite differences") {
  TestRng rng(303);
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    ModelParams p(rng.uniform(2.1, 4.5), rng.uniform(0.2, 2.5), rng.uniform(0.2, 2.5),
                  rng.uniform(1.2, 4.0), rng.uniform(0.2, 2.5));
    const double x = rng.uniform(0.3, 1.5);
    const double y = rng.uniform(0.05, 1.2);
    const JacobianMatrix j = jacobian(p, State{x, y});
    const double fd11 = (raw_x(p, x + h, y) - raw_x(p, x - h, y)) / (2 * h);
    const double fd12 = (raw_x(p, x, y + h) - raw_x(p, x, y - h)) / (2 * h);
    const double fd21 = (raw_y(p, x + h, y) - raw_y(p, x - h, y)) / (2 * h);
    const double fd22 = (raw_y(p, x, y + h) - raw_y(p, x, y - h)) / (2 * h);
    CHECK(close_rel(fd11, j.j11, 1e-5));
    CHECK(close_rel(fd12, j.j12, 1e-5));
    CHECK(close_rel(fd21, j.j21, 1e-5));
    CHECK(close_rel(fd22, j.j22, 1e-5));
  }
}

TEST_CASE("jacobian sign structure") {
  TestRng rng(404);
  for (int i = 0; i < 100; ++i) {
    ModelParams p(rng.uniform(2.1, 4.5), rng.uniform(0.2, 2.5), rng.uniform(0.2, 2.5),
                  rng.uniform(1.2, 4.0), rng.uniform(0.2, 2.5));
    const State s{rng.uniform(0.1, 2.0), rng.uniform(0.0, 1.5)};
    const JacobianMatrix j = jacobian(p, s);
    CHECK(j.j12 <= 0.0);
    CHECK(j.j21 >= 0.0);
  }
}

TEST_CASE("prey decays monotonically at a = 2 on the axis") {
  for (double b : {0.5, 1.0, 2.0}) {
    ModelParams p(2.0, b, 1, 1.5, 1);
    for (double x0 : {0.1 / b, 0.4 / b, 0.9 / b}) {
      double x = x0;
      for (int k = 0; k < 300; ++k) {
        const StepResult r = step(p, State{x, 0.0});
        REQUIRE_FALSE(r.exited());
        CHECK(r.next.x < x);
        CHECK(r.next.x > 0.0);
        x = r.next.x;
      }
    }
  }
}

TEST_CASE("domain exits carry the raw pair and the violated constraint") {
  SUBCASE("prey becomes nonpositive") {
    ModelParams p(3, 1, 2, 4.5, 2);
    const StepResult r = step(p, State{2.5, 0.0});
    REQUIRE(r.exited());
    CHECK(r.violation == DomainViolation::prey_nonpositive);
    CHECK(r.raw_x < 0.0);
    CHECK(r.raw_y == 0.0);
  }
  SUBCASE("predator becomes negative") {
    ModelParams p(3, 1, 0.1, 2, 4);
    const StepResult r = step(p, State{0.5, 0.5});
    REQUIRE(r.exited());
    CHECK(r.violation == DomainViolation::predator_negative);
    CHECK(r.raw_x > 0.0);
    CHECK(r.raw_y < 0.0);
  }
  SUBCASE("prey underflows the extinction threshold") {
    ModelParams p(1.05, 1, 1, 1.5, 1);
    const StepResult r = step(p, State{1e-299, 0.0});
    REQUIRE(r.exited());
    CHECK(r.violation == DomainViolation::prey_underflow);
    CHECK(r.raw_x > 0.0);
    CHECK(r.raw_x < 1e-300);
  }
}

TEST_CASE("state validity helper") {
  CHECK(is_valid_state(State{0.5, 0.0}));
  CHECK(is_valid_state(State{1e-10, 3.0}));
  CHECK_FALSE(is_valid_state(State{0.0, 0.1}));
  CHECK_FALSE(is_valid_state(State{-1.0, 0.1}));
  CHECK_FALSE(is_valid_state(State{1.0, -1e-12}));
  CHECK_FALSE(is_valid_state(State{std::numeric_limits<double>::quiet_NaN(), 0.0}));
}
