#pragma once

// Flux-tube metrics in (r, theta, s) coordinates and their Levi-Civita
// curvature, evaluated by central finite differences on the metric
// components.
//
// Coordinate order is fixed as (x1, x2, x3) = (r, theta, s), so R_1313 is
// R_{r s r s} and R_2323 is R_{theta s theta s}.

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tubedyn/common.hpp"

namespace tubedyn::geometry {

enum Axis : int { kR = 0, kTheta = 1, kS = 2 };

// First derivatives of the metric (Christoffel symbols).
inline constexpr double kChristoffelStep = 1e-5;
// Second derivatives of the metric (Riemann tensor). Nested differences lose
// eps/h^2 to cancellation, so the step is wider than the first-derivative one.
inline constexpr double kRiemannStep = 1e-3;

struct CoordPoint {
  double r = 0.0;
  double theta = 0.0;
  double s = 0.0;

  // Validates r >= 0 and reduces theta into [0, 2pi).
  static CoordPoint at(double r, double theta, double s);

  Vec3 coords() const { return {r, theta, s}; }
};

// kappa(s) = s / cos(theta) + c0: the curvature profile forced by the shear
// flow v_s = eta r on a thick untwisted tube.
struct SlowDynamoCurvatureProfile {
  double c0 = 0.0;
  double theta = 0.0;

  // Throws DomainError when cos(theta) == 0.
  LinearProfile kappa() const;
};

enum class TubeFamily { Thin, Thick };

std::string to_string(TubeFamily family);

struct TubeMetric {
  TubeFamily family = TubeFamily::Thin;
  LinearProfile kappa;  // ignored by the thin tube
  // Set when kappa was generated from a slow-dynamo profile.
  std::optional<SlowDynamoCurvatureProfile> slow_dynamo;

  static TubeMetric thin();
  static TubeMetric thick(LinearProfile kappa);
  static TubeMetric thick(SlowDynamoCurvatureProfile profile);

  // K^2 = 1 - r kappa(s) cos(theta); identically 1 for the thin tube.
  double k_squared(const Vec3& x) const;

  // diag(1, r^2, K^2). Throws DomainError if r < 0 or K^2 <= 0.
  Mat3 components(const Vec3& x) const;
};

// Arbitrary metric field; used for reference metrics in tests and checks.
using MetricField = std::function<Mat3(const Vec3&)>;

Mat3 eval_metric(const TubeMetric& metric, const CoordPoint& p);

Mat3 inverse(const Mat3& m);

struct ChristoffelTensor {
  // values[i][j][k] = Gamma^i_{jk}
  std::array<Mat3, 3> values{};

  double operator()(int i, int j, int k) const { return values[i][j][k]; }
};

struct RiemannTensor {
  // Fully lowered R_{ijkl}, index (i, j, k, l) -> ((i*3 + j)*3 + k)*3 + l.
  std::array<double, 81> values{};
  CoordPoint point;

  double operator()(int i, int j, int k, int l) const {
    return values[((i * 3 + j) * 3 + k) * 3 + l];
  }
  double& operator()(int i, int j, int k, int l) {
    return values[((i * 3 + j) * 3 + k) * 3 + l];
  }

  double max_abs() const;
};

ChristoffelTensor christoffel(const MetricField& metric, const Vec3& x,
                              double h = kChristoffelStep);
ChristoffelTensor christoffel(const TubeMetric& metric, const CoordPoint& p,
                              double h = kChristoffelStep);

// R_ijkl = 1/2 (g_il,jk + g_jk,il - g_ik,jl - g_jl,ik)
//          + g_mn (Gamma^m_jk Gamma^n_il - Gamma^m_jl Gamma^n_ik),
// i.e. R^i_jkl = d_k Gamma^i_jl - d_l Gamma^i_jk + Gamma^i_km Gamma^m_jl
// - Gamma^i_lm Gamma^m_jk lowered with g. The metric Hessian comes from
// nested central differences of step h and is symmetric by construction.
RiemannTensor riemann(const MetricField& metric, const Vec3& x, double h = kRiemannStep);
RiemannTensor riemann(const TubeMetric& metric, const CoordPoint& p,
                      double h = kRiemannStep);

// Largest violations of the algebraic identities, divided by max |R|.
struct SymmetryResiduals {
  double antisym_first = 0.0;   // R_ijkl + R_jikl
  double antisym_second = 0.0;  // R_ijkl + R_ijlk
  double pair = 0.0;            // R_ijkl - R_klij
  double bianchi = 0.0;         // R_ijkl + R_iklj + R_iljk

  double max() const;
};

SymmetryResiduals symmetry_residuals(const RiemannTensor& riemann);

// Richardson consistency of the step: max|R(h) - R(h/2)| <= 16 max|R(h/2) - R(h/4)|.
struct RichardsonCheck {
  double coarse_delta = 0.0;  // max |R(h) - R(h/2)|
  double fine_delta = 0.0;    // max |R(h/2) - R(h/4)|
  bool passed = false;
};

RichardsonCheck richardson_check(const TubeMetric& metric, const CoordPoint& p,
                                 double h = kRiemannStep);

// Closed forms printed for the thick untwisted tube. Forms that do not
// apply to the metric are empty.
struct PrintedCurvatureForms {
  double r1313_k4 = 0.0;      // -K^4 / (2 r^2)
  double r1313_kappa4 = 0.0;  // -1/2 r^2 kappa^4 cos^2(theta)
  double r2323_k2 = 0.0;      // -K^2
  std::optional<double> r1313_slow;  // -1/2 r^2 s^4 cos^6(theta)
  std::optional<double> r2323_slow;  // -r^2
};

// Pure arithmetic; defined even where the metric is degenerate.
PrintedCurvatureForms printed_curvature_forms(const TubeMetric& metric, const CoordPoint& p);

struct CurvatureComparisonRow {
  std::size_t point = 0;
  std::string component;
  double oracle = 0.0;
  double printed_form_1 = 0.0;
  std::optional<double> printed_form_2;
  double rel_dev_1 = 0.0;
  std::optional<double> rel_dev_2;
};

// Below this magnitude finite-difference curvature is indistinguishable from 0.
inline constexpr double kCurvatureNoiseFloor = 1e-8;

// (printed - oracle) / max(|printed|, |oracle|), or 0 when both are below the
// noise floor.
double relative_deviation(double printed, double oracle);

// Oracle R_1313 and R_2323 against the printed forms at every point. Rows
// for the slow-dynamo forms are added when the metric carries that profile.
// Domain errors from the oracle propagate.
std::vector<CurvatureComparisonRow> curvature_comparison_report(const TubeMetric& metric,
                                                           std::span<const CoordPoint> points,
                                                           double h = kRiemannStep);

}  // namespace tubedyn::geometry
