#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "leslie/fixed_points.hpp"
#include "test_util.hpp"

using namespace leslie;

namespace {

ModelParams random_lambda2_params(TestRng& rng) {
  // d > 2 keeps K positive automatically
  return ModelParams(rng.uniform(2.05, 5.0), rng.uniform(0.1, 3.0), rng.uniform(0.1, 3.0),
                     rng.uniform(2.05, 5.0), rng.uniform(0.1, 3.0));
}

}  // namespace

TEST_CASE("closed-form fixed points of the worked cases") {
  SUBCASE("a=3, b=2, c=5, d=4, alpha=1") {
    const auto fps = fixed_points(ModelParams(3, 2, 5, 4, 1));
    REQUIRE(fps.size() == 2);
    CHECK(fps[0].id == FixedPointId::lambda1);
    CHECK(close_rel(fps[0].location.x, 0.5, 1e-14));
    CHECK(fps[1].id == FixedPointId::lambda2);
    CHECK(close_rel(fps[1].location.x, 1.0 / 12.0, 1e-12));
    CHECK(close_rel(fps[1].location.y, 1.0 / 6.0, 1e-12));
    CHECK(fps[1].classification == Stability::attractive);
  }
  SUBCASE("a=3, b=1, c=2, d=4.5, alpha=2") {
    const auto fps = fixed_points(ModelParams(3, 1, 2, 4.5, 2));
    REQUIRE(fps.size() == 2);
    CHECK(close_rel(fps[1].location.x, 2.0 / 7.0, 1e-12));
    CHECK(close_rel(fps[1].location.y, 5.0 / 14.0, 1e-12));
    CHECK(fps[1].classification == Stability::attractive);
  }
  SUBCASE("no fixed point at a = 2") {
    CHECK(fixed_points(ModelParams(2, 1, 1, 2, 1)).empty());
    CHECK(fixed_points(ModelParams(1.5, 1, 1, 2, 1)).empty());
  }
  SUBCASE("lambda2 collapses onto lambda1 at d = 2") {
    const auto fps = fixed_points(ModelParams(2.5, 1, 1, 2, 1));
    REQUIRE(fps.size() == 1);
    CHECK(fps[0].id == FixedPointId::lambda1);
  }
}

TEST_CASE("lambda1 classification table") {
  auto classify = [](double a, double d) {
    return classify_lambda1(ModelParams(a, 1, 1, d, 1)).classification;
  };
  CHECK(classify(3, 1.5) == Stability::attractive);
  CHECK(classify(5, 3) == Stability::repeller);
  CHECK(classify(3, 3) == Stability::saddle);
  CHECK(classify(4, 1.5) == Stability::nonhyperbolic);
  CHECK(classify(3, 2) == Stability::nonhyperbolic);

  const FixedPointReport r = classify_lambda1(ModelParams(3, 1, 1, 1.5, 1));
  CHECK(r.eig1.real() == 0.0);
  CHECK(close_rel(r.eig2.real(), 0.5, 1e-15));
  CHECK(r.eig1.imag() == 0.0);

  CHECK_THROWS_AS(classify_lambda1(ModelParams(2, 1, 1, 2, 1)), Error);
}

TEST_CASE("lambda2 with a complex eigenvalue pair") {
  // T = -13/22, Delta = 10/11, complex pair of modulus sqrt(10/11)
  ModelParams p(3, 1, 2, 4.5, 0.5);
  const auto [trace, det] = lambda2_trace_det(p);
  CHECK(close_rel(trace, -13.0 / 22.0, 1e-12));
  CHECK(close_rel(det, 10.0 / 11.0, 1e-12));

  const FixedPointReport r = classify_lambda2(p);
  CHECK(r.eig1.imag() != 0.0);
  CHECK(close_rel(std::abs(r.eig1), std::sqrt(10.0 / 11.0), 1e-12));
  CHECK(close_rel(std::abs(r.eig2), std::sqrt(10.0 / 11.0), 1e-12));
  CHECK(r.classification == Stability::attractive);
}

TEST_CASE("lambda2 existence errors") {
  CHECK_THROWS_AS(classify_lambda2(ModelParams(2, 1, 1, 3, 1)), Error);    // a <= 2
  CHECK_THROWS_AS(classify_lambda2(ModelParams(3, 1, 1, 2, 1)), Error);    // d = 2
  CHECK_THROWS_AS(classify_lambda2(ModelParams(3, 1, 1, 1.5, 1)), Error);  // d < 2
  try {
    classify_lambda2(ModelParams(3, 1, 1, 2, 1));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_a_fixed_point);
  }
}

TEST_CASE("eigenvalues near the d -> 2 collapse approach the lambda1 spectrum") {
  ModelParams p(3, 1, 2, 2.0 + 1e-6, 2);
  const FixedPointReport r2 = classify_lambda2(p);
  const FixedPointReport r1 = classify_lambda1(p);
  double m2[2] = {std::abs(r2.eig1), std::abs(r2.eig2)};
  double m1[2] = {std::abs(r1.eig1), std::abs(r1.eig2)};
  std::sort(m2, m2 + 2);
  std::sort(m1, m1 + 2);
  CHECK(std::abs(m2[0] - m1[0]) < 1e-3);
  CHECK(std::abs(m2[1] - m1[1]) < 1e-3);
}

TEST_CASE("Vieta consistency of the returned eigenvalues") {
  TestRng rng(17);
  for (int i = 0; i < 500; ++i) {
    ModelParams p = random_lambda2_params(rng);
    const FixedPointReport r = classify_lambda2(p);
    const auto sum = r.eig1 + r.eig2;
    const auto prod = r.eig1 * r.eig2;
    CHECK(close_rel(sum.real(), r.trace, 1e-10));
    CHECK(std::abs(sum.imag()) < 1e-10);
    CHECK(close_rel(prod.real(), r.det, 1e-10));
    CHECK(std::abs(prod.imag()) < 1e-10);
  }
}

TEST_CASE("closed forms reproduce the quadratic roots") {
  TestRng rng(18);
  int real_cases = 0;
  for (int i = 0; i < 500; ++i) {
    ModelParams p = random_lambda2_params(rng);
    const double K = lambda2_denominator(p);
    const double B = lambda2_B(p);
    const double D = lambda2_D(p);
    const auto [trace, det] = lambda2_trace_det(p);

    // the big polynomial D equals B^2 - 4 K^2 Delta
    CHECK(close_rel(D, B * B - 4.0 * K * K * det, 1e-9));
    // and the trace is -B/K
    CHECK(close_rel(trace, -B / K, 1e-9));

    if (const auto closed = lambda2_closed_form_eigs(p)) {
      ++real_cases;
      const FixedPointReport r = classify_lambda2(p);
      CHECK(std::abs(r.eig1.imag()) < 1e-9);
      double quad[2] = {r.eig1.real(), r.eig2.real()};
      double cf[2] = {closed->first, closed->second};
      std::sort(quad, quad + 2);
      std::sort(cf, cf + 2);
      CHECK(close_rel(quad[0], cf[0], 1e-9));
      CHECK(close_rel(quad[1], cf[1], 1e-9));
    }
  }
  CHECK(real_cases > 50);  // both branches must actually be exercised
  CHECK(real_cases < 450);
}

TEST_CASE("reported trace and det match the Jacobian at the fixed point") {
  TestRng rng(19);
  for (int i = 0; i < 100; ++i) {
    ModelParams p = random_lambda2_params(rng);
    for (const auto& r : fixed_points(p)) {
      const JacobianMatrix j = jacobian(p, r.location);
      CHECK(close_rel(j.trace(), r.trace, 1e-12));
      CHECK(close_rel(j.det(), r.det, 1e-12));
    }
  }
}

TEST_CASE("classification depends only on the unordered modulus pair") {
  TestRng rng(20);
  for (int i = 0; i < 300; ++i) {
    const double m1 = rng.uniform(0.0, 2.0);
    const double m2 = rng.uniform(0.0, 2.0);
    CHECK(classify_moduli(m1, m2) == classify_moduli(m2, m1));
  }
  CHECK(classify_moduli(1.0, 0.5) == Stability::nonhyperbolic);
  CHECK(classify_moduli(1.0 + 1e-10, 0.5) == Stability::nonhyperbolic);
  CHECK(classify_moduli(1.0 + 1e-8, 0.5) == Stability::saddle);
  CHECK(classify_moduli(0.3, 0.9) == Stability::attractive);
  CHECK(classify_moduli(1.2, 1.1) == Stability::repeller);
}
