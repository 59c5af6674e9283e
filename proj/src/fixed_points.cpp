#include "leslie/fixed_points.hpp"

#include <cassert>
#include <cmath>

namespace leslie {

namespace {

// Eigenvalues of a 2x2 matrix from its trace and determinant.
void eigen_from_trace_det(double tr, double det, std::complex<double>& e1,
                          std::complex<double>& e2) {
  const double disc = tr * tr - 4.0 * det;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    e1 = {(tr + s) / 2.0, 0.0};
    e2 = {(tr - s) / 2.0, 0.0};
  } else {
    const double s = std::sqrt(-disc) / 2.0;
    e1 = {tr / 2.0, s};
    e2 = {tr / 2.0, -s};
  }
}

}  // namespace

double lambda2_denominator(const ModelParams& p) {
  return p.b * p.alpha + p.c * (p.d - 2.0);
}

double lambda2_B(const ModelParams& p) {
  const double a = p.a, b = p.b, c = p.c, d = p.d, al = p.alpha;
  return a * b * al + b * d * al + c * d * d - 6.0 * b * al - 6.0 * c * d + 8.0 * c;
}

double lambda2_D(const ModelParams& p) {
  const double a = p.a, b = p.b, c = p.c, d = p.d, al = p.alpha;
  return a * a * b * b * al * al - 2.0 * a * b * b * d * al * al -
         6.0 * a * b * c * d * d * al - 4.0 * a * c * c * d * d * d +
         b * b * d * d * al * al + 2.0 * b * c * d * d * d * al +
         c * c * d * d * d * d + 24.0 * a * b * c * d * al +
         24.0 * a * c * c * d * d - 24.0 * a * b * c * al -
         48.0 * a * c * c * d - 24.0 * b * c * d * al - 24.0 * c * c * d * d +
         32.0 * a * c * c + 32.0 * b * c * al + 64.0 * c * c * d - 48.0 * c * c;
}

std::pair<double, double> lambda2_trace_det(const ModelParams& p) {
  const double K = lambda2_denominator(p);
  const double w = (p.a - 2.0) * p.b * p.alpha / K;
  const double trace = 4.0 - p.d - w;
  const double det =
      (3.0 - p.d) * (1.0 - w) + p.c * (p.a - 2.0) * (p.d - 2.0) * (p.d - 2.0) / K;
  return {trace, det};
}

std::optional<std::pair<double, double>> lambda2_closed_form_eigs(const ModelParams& p) {
  const double D = lambda2_D(p);
  if (D < 0.0) return std::nullopt;
  const double K = lambda2_denominator(p);
  const double B = lambda2_B(p);
  const double s = std::sqrt(D);
  return std::make_pair(-(B + s) / (2.0 * K), -(B - s) / (2.0 * K));
}

Stability classify_moduli(double m1, double m2) {
  const bool boundary1 = std::abs(m1 - 1.0) < kHyperbolicityTol;
  const bool boundary2 = std::abs(m2 - 1.0) < kHyperbolicityTol;
  if (boundary1 || boundary2) return Stability::nonhyperbolic;
  if (m1 < 1.0 && m2 < 1.0) return Stability::attractive;
  if (m1 > 1.0 && m2 > 1.0) return Stability::repeller;
  return Stability::saddle;
}

FixedPointReport classify_lambda1(const ModelParams& p) {
  if (!(p.a > 2.0))
    throw Error(ErrorCode::not_a_fixed_point, "lambda1 requires a > 2");
  FixedPointReport r;
  r.id = FixedPointId::lambda1;
  r.location = State{(p.a - 2.0) / p.b, 0.0};
  r.exists = true;
  r.reason = "a > 2";
  const double nu1 = 3.0 - p.a;
  const double nu2 = p.d - 1.0;
  r.eig1 = {nu1, 0.0};
  r.eig2 = {nu2, 0.0};
  r.trace = nu1 + nu2;
  r.det = nu1 * nu2;
  r.discriminant = (nu1 - nu2) * (nu1 - nu2);
  r.classification = classify_moduli(std::abs(nu1), std::abs(nu2));
  return r;
}

FixedPointReport classify_lambda2(const ModelParams& p) {
  if (!(p.a > 2.0))
    throw Error(ErrorCode::not_a_fixed_point, "lambda2 requires a > 2");
  if (!(p.d > 2.0))
    throw Error(ErrorCode::not_a_fixed_point,
                "lambda2 requires d > 2 (at d = 2 it collapses onto lambda1)");
  const double K = lambda2_denominator(p);
  if (!(K > 0.0))
    throw Error(ErrorCode::not_a_fixed_point,
                "lambda2 requires b*alpha + c*(d-2) > 0");

  FixedPointReport r;
  r.id = FixedPointId::lambda2;
  r.location = State{(p.a - 2.0) * p.alpha / K, (p.a - 2.0) * (p.d - 2.0) / K};
  r.exists = true;
  r.reason = "a > 2, d > 2, K > 0";
  const auto [trace, det] = lambda2_trace_det(p);
  r.trace = trace;
  r.det = det;
  r.discriminant = lambda2_D(p);
  eigen_from_trace_det(trace, det, r.eig1, r.eig2);
  r.classification = classify_moduli(std::abs(r.eig1), std::abs(r.eig2));

#ifndef NDEBUG
  // the closed forms -(B +- sqrt(D))/(2K) must reproduce the quadratic roots
  if (const auto closed = lambda2_closed_form_eigs(p)) {
    const double scale = std::max({1.0, std::abs(closed->first), std::abs(closed->second)});
    assert(std::abs(r.eig1.imag()) < 1e-6 * scale);
    assert(std::min(std::abs(r.eig1.real() - closed->first) +
                        std::abs(r.eig2.real() - closed->second),
                    std::abs(r.eig1.real() - closed->second) +
                        std::abs(r.eig2.real() - closed->first)) < 1e-6 * scale);
  }
#endif
  return r;
}

std::vector<FixedPointReport> fixed_points(const ModelParams& p) {
  std::vector<FixedPointReport> out;
  if (!(p.a > 2.0)) return out;  // no fixed point at all for a <= 2
  out.push_back(classify_lambda1(p));
  if (p.d > 2.0 && lambda2_denominator(p) > 0.0) out.push_back(classify_lambda2(p));
  return out;
}

const char* stability_name(Stability s) {
  switch (s) {
    case Stability::nonhyperbolic: return "nonhyperbolic";
    case Stability::attractive: return "attractive";
    case Stability::repeller: return "repeller";
    case Stability::saddle: return "saddle";
  }
  return "unknown";
}

const char* fixed_point_name(FixedPointId id) {
  return id == FixedPointId::lambda1 ? "lambda1" : "lambda2";
}

}  // namespace leslie
