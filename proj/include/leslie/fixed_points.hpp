#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leslie/model.hpp"

namespace leslie {

enum class Stability { nonhyperbolic, attractive, repeller, saddle };
enum class FixedPointId { lambda1, lambda2 };

// |modulus - 1| below this counts as nonhyperbolic, so the exact boundary
// cases (a = 4, d = 2) classify correctly under floating point.
inline constexpr double kHyperbolicityTol = 1e-9;

struct FixedPointReport {
  FixedPointId id = FixedPointId::lambda1;
  State location{};
  bool exists = false;
  std::string reason;  // existence condition met, or why the point is absent
  std::complex<double> eig1{}, eig2{};
  double trace = 0.0;
  double det = 0.0;
  double discriminant = 0.0;  // for lambda2 this is the closed-form D
  Stability classification = Stability::nonhyperbolic;
};

// K = b*alpha + c*(d-2). lambda2 = ((a-2)*alpha/K, (a-2)*(d-2)/K) exists
// iff a > 2, d > 2 and K > 0 (d = 2 collapses it onto lambda1).
double lambda2_denominator(const ModelParams& p);

// Coefficients of the closed-form eigenvalues mu = -(B +- sqrt(D))/(2K).
double lambda2_B(const ModelParams& p);
double lambda2_D(const ModelParams& p);

// Trace and determinant of the Jacobian at lambda2:
//   T = 4 - d - (a-2) b alpha / K
//   Delta = (3-d)(1 - (a-2) b alpha / K) + c (a-2) (d-2)^2 / K
std::pair<double, double> lambda2_trace_det(const ModelParams& p);

// Real eigenvalues from the closed forms, when D >= 0.
std::optional<std::pair<double, double>> lambda2_closed_form_eigs(const ModelParams& p);

// Every fixed point that exists for p, classified. Empty when a <= 2.
std::vector<FixedPointReport> fixed_points(const ModelParams& p);

// lambda1 = ((a-2)/b, 0), eigenvalues 3-a and d-1. Throws
// not_a_fixed_point when a <= 2.
FixedPointReport classify_lambda1(const ModelParams& p);

// lambda2 classified through the spectrum of its Jacobian; complex pairs
// are judged by modulus sqrt(Delta). Throws not_a_fixed_point when the
// point does not exist.
FixedPointReport classify_lambda2(const ModelParams& p);

// Four-way call on the unordered pair of eigenvalue moduli.
Stability classify_moduli(double m1, double m2);

const char* stability_name(Stability s);
const char* fixed_point_name(FixedPointId id);

}  // namespace leslie
