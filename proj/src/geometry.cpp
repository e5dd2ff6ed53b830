#include "tubedyn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tubedyn::geometry {
namespace {

using MetricDerivatives = std::array<Mat3, 3>;             // [k] -> d_k g
using MetricHessian = std::array<std::array<Mat3, 3>, 3>;  // [k][l] -> d_k d_l g

// Step for coordinate k, adjusted so that x + h is exactly representable.
double coordinate_step(double h, double x) {
  const double raw = h * std::max(1.0, std::abs(x));
  const double shifted = x + raw;
  return shifted - x;
}

Vec3 shifted(Vec3 x, int k, double dk) {
  x[k] += dk;
  return x;
}

Mat3 combine(const Mat3& a, const Mat3& b, double scale) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i][j] = (a[i][j] - b[i][j]) * scale;
  }
  return out;
}

Mat3 evaluate(const MetricField& metric, const Vec3& x) {
  try {
    return metric(x);
  } catch (const DomainError& e) {
    std::ostringstream msg;
    msg << "finite-difference stencil point (" << x[0] << ", " << x[1] << ", " << x[2]
        << ") leaves the metric domain: " << e.what();
    throw DomainError(msg.str());
  }
}

MetricDerivatives first_derivatives(const MetricField& metric, const Vec3& x, double h) {
  MetricDerivatives dg{};
  for (int k = 0; k < 3; ++k) {
    const double hk = coordinate_step(h, x[k]);
    dg[k] = combine(evaluate(metric, shifted(x, k, hk)), evaluate(metric, shifted(x, k, -hk)),
                    0.5 / hk);
  }
  return dg;
}

// d_k (d_l g) with both derivatives taken as central differences.
MetricHessian second_derivatives(const MetricField& metric, const Vec3& x, double h) {
  std::array<double, 3> step{};
  for (int k = 0; k < 3; ++k) step[k] = coordinate_step(h, x[k]);

  MetricHessian d2g{};
  for (int k = 0; k < 3; ++k) {
    for (int l = k; l < 3; ++l) {
      const Vec3 plus = shifted(x, k, step[k]);
      const Vec3 minus = shifted(x, k, -step[k]);
      const Mat3 upper = combine(evaluate(metric, shifted(plus, l, step[l])),
                                 evaluate(metric, shifted(plus, l, -step[l])), 0.5 / step[l]);
      const Mat3 lower = combine(evaluate(metric, shifted(minus, l, step[l])),
                                 evaluate(metric, shifted(minus, l, -step[l])), 0.5 / step[l]);
      d2g[k][l] = combine(upper, lower, 0.5 / step[k]);
      d2g[l][k] = d2g[k][l];
    }
  }
  return d2g;
}

ChristoffelTensor assemble_christoffel(const Mat3& g, const MetricDerivatives& dg) {
  const Mat3 ginv = inverse(g);
  // First kind: Gamma_{m jk} = 1/2 (g_mk,j + g_mj,k - g_jk,m)
  std::array<Mat3, 3> first{};
  for (int m = 0; m < 3; ++m) {
    for (int j = 0; j < 3; ++j) {
      for (int k = j; k < 3; ++k) {
        first[m][j][k] = 0.5 * (dg[j][m][k] + dg[k][m][j] - dg[m][j][k]);
        first[m][k][j] = first[m][j][k];
      }
    }
  }
  ChristoffelTensor out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = j; k < 3; ++k) {
        double sum = 0.0;
        for (int m = 0; m < 3; ++m) sum += ginv[i][m] * first[m][j][k];
        out.values[i][j][k] = sum;
        out.values[i][k][j] = sum;
      }
    }
  }
  return out;
}

MetricField as_field(const TubeMetric& metric) {
  return [metric](const Vec3& x) { return metric.components(x); };
}

}  // namespace

CoordPoint CoordPoint::at(double r, double theta, double s) {
  if (!(r >= 0.0)) throw DomainError("radial coordinate must be >= 0");
  if (!std::isfinite(theta) || !std::isfinite(s) || !std::isfinite(r)) {
    throw DomainError("coordinates must be finite");
  }
  double reduced = std::fmod(theta, kTwoPi);
  if (reduced < 0.0) reduced += kTwoPi;
  if (reduced >= kTwoPi) reduced = 0.0;
  return {r, reduced, s};
}

LinearProfile SlowDynamoCurvatureProfile::kappa() const {
  const double c = std::cos(theta);
  if (std::abs(c) < 1e-12) throw DomainError("slow-dynamo curvature profile needs cos(theta) != 0");
  return {c0, 1.0 / c};
}

std::string to_string(TubeFamily family) {
  return family == TubeFamily::Thin ? "thin" : "thick";
}

TubeMetric TubeMetric::thin() { return {TubeFamily::Thin, {}, std::nullopt}; }

TubeMetric TubeMetric::thick(LinearProfile kappa) {
  return {TubeFamily::Thick, kappa, std::nullopt};
}

TubeMetric TubeMetric::thick(SlowDynamoCurvatureProfile profile) {
  return {TubeFamily::Thick, profile.kappa(), profile};
}

double TubeMetric::k_squared(const Vec3& x) const {
  if (family == TubeFamily::Thin) return 1.0;
  return 1.0 - x[kR] * kappa(x[kS]) * std::cos(x[kTheta]);
}

Mat3 TubeMetric::components(const Vec3& x) const {
  if (x[kR] < 0.0) throw DomainError("metric evaluated at r < 0");
  const double k2 = k_squared(x);
  if (!(k2 > 0.0)) {
    std::ostringstream msg;
    msg << "thick-tube metric degenerate: K^2 = " << k2 << " <= 0";
    throw DomainError(msg.str());
  }
  Mat3 g{};
  g[kR][kR] = 1.0;
  g[kTheta][kTheta] = x[kR] * x[kR];
  g[kS][kS] = k2;
  return g;
}

Mat3 eval_metric(const TubeMetric& metric, const CoordPoint& p) {
  return metric.components(p.coords());
}

Mat3 inverse(const Mat3& m) {
  Mat3 cof{};
  cof[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  cof[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
  cof[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
  cof[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  cof[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
  cof[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
  cof[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  cof[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
  cof[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double det = m[0][0] * cof[0][0] + m[0][1] * cof[1][0] + m[0][2] * cof[2][0];
  if (det == 0.0 || !std::isfinite(det)) throw DomainError("singular metric");
  for (auto& row : cof) {
    for (auto& v : row) v /= det;
  }
  return cof;
}

double RiemannTensor::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

ChristoffelTensor christoffel(const MetricField& metric, const Vec3& x, double h) {
  return assemble_christoffel(evaluate(metric, x), first_derivatives(metric, x, h));
}

ChristoffelTensor christoffel(const TubeMetric& metric, const CoordPoint& p, double h) {
  return christoffel(as_field(metric), p.coords(), h);
}

RiemannTensor riemann(const MetricField& metric, const Vec3& x, double h) {
  const Mat3 g = evaluate(metric, x);
  const ChristoffelTensor gamma =
      assemble_christoffel(g, first_derivatives(metric, x, kChristoffelStep));
  const MetricHessian d2g = second_derivatives(metric, x, h);

  RiemannTensor out;
  out.point = CoordPoint{x[kR], x[kTheta], x[kS]};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          double value = 0.5 * (d2g[j][k][i][l] + d2g[i][l][j][k] - d2g[j][l][i][k] -
                                d2g[i][k][j][l]);
          for (int m = 0; m < 3; ++m) {
            for (int n = 0; n < 3; ++n) {
              value += g[m][n] * (gamma(m, j, k) * gamma(n, i, l) - gamma(m, j, l) * gamma(n, i, k));
            }
          }
          out(i, j, k, l) = value;
        }
      }
    }
  }
  return out;
}

RiemannTensor riemann(const TubeMetric& metric, const CoordPoint& p, double h) {
  RiemannTensor out = riemann(as_field(metric), p.coords(), h);
  out.point = p;
  return out;
}

double SymmetryResiduals::max() const {
  return std::max({antisym_first, antisym_second, pair, bianchi});
}

SymmetryResiduals symmetry_residuals(const RiemannTensor& R) {
  SymmetryResiduals res;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          res.antisym_first = std::max(res.antisym_first, std::abs(R(i, j, k, l) + R(j, i, k, l)));
          res.antisym_second = std::max(res.antisym_second, std::abs(R(i, j, k, l) + R(i, j, l, k)));
          res.pair = std::max(res.pair, std::abs(R(i, j, k, l) - R(k, l, i, j)));
          res.bianchi = std::max(res.bianchi,
                                 std::abs(R(i, j, k, l) + R(i, k, l, j) + R(i, l, j, k)));
        }
      }
    }
  }
  const double scale = R.max_abs();
  if (scale > 0.0) {
    res.antisym_first /= scale;
    res.antisym_second /= scale;
    res.pair /= scale;
    res.bianchi /= scale;
  }
  return res;
}

RichardsonCheck richardson_check(const TubeMetric& metric, const CoordPoint& p, double h) {
  const RiemannTensor coarse = riemann(metric, p, h);
  const RiemannTensor mid = riemann(metric, p, 0.5 * h);
  const RiemannTensor fine = riemann(metric, p, 0.25 * h);
  RichardsonCheck check;
  for (std::size_t n = 0; n < coarse.values.size(); ++n) {
    check.coarse_delta = std::max(check.coarse_delta, std::abs(coarse.values[n] - mid.values[n]));
    check.fine_delta = std::max(check.fine_delta, std::abs(mid.values[n] - fine.values[n]));
  }
  check.passed = check.coarse_delta <= 16.0 * check.fine_delta;
  return check;
}

PrintedCurvatureForms printed_curvature_forms(const TubeMetric& metric, const CoordPoint& p) {
  const Vec3 x = p.coords();
  const double k2 = metric.k_squared(x);
  const double kappa = metric.family == TubeFamily::Thin ? 0.0 : metric.kappa(p.s);
  const double c = std::cos(p.theta);
  const double r2 = p.r * p.r;

  PrintedCurvatureForms forms;
  forms.r1313_k4 = -(k2 * k2) / (2.0 * r2);
  forms.r1313_kappa4 = -0.5 * r2 * std::pow(kappa, 4) * c * c;
  forms.r2323_k2 = -k2;
  if (metric.slow_dynamo) {
    forms.r1313_slow = -0.5 * r2 * std::pow(p.s, 4) * std::pow(c, 6);
    forms.r2323_slow = -r2;
  }
  return forms;
}

double relative_deviation(double printed, double oracle) {
  const double scale = std::max(std::abs(printed), std::abs(oracle));
  if (scale < kCurvatureNoiseFloor) return 0.0;
  return (printed - oracle) / scale;
}

std::vector<CurvatureComparisonRow> curvature_comparison_report(const TubeMetric& metric,
                                                           std::span<const CoordPoint> points,
                                                           double h) {
  std::vector<CurvatureComparisonRow> rows;
  for (std::size_t n = 0; n < points.size(); ++n) {
    const CoordPoint& p = points[n];
    const RiemannTensor R = riemann(metric, p, h);
    const PrintedCurvatureForms forms = printed_curvature_forms(metric, p);
    const double r1313 = R(kR, kS, kR, kS);
    const double r2323 = R(kTheta, kS, kTheta, kS);

    auto row = [&](std::string name, double oracle, double form1, std::optional<double> form2) {
      CurvatureComparisonRow out;
      out.point = n;
      out.component = std::move(name);
      out.oracle = oracle;
      out.printed_form_1 = form1;
      out.printed_form_2 = form2;
      out.rel_dev_1 = relative_deviation(form1, oracle);
      if (form2) out.rel_dev_2 = relative_deviation(*form2, oracle);
      rows.push_back(std::move(out));
    };
    row("R_1313", r1313, forms.r1313_k4, forms.r1313_kappa4);
    row("R_2323", r2323, forms.r2323_k2, std::nullopt);
    if (forms.r1313_slow) row("R_1313_slow", r1313, *forms.r1313_slow, std::nullopt);
    if (forms.r2323_slow) row("R_2323_slow", r2323, *forms.r2323_slow, std::nullopt);
  }
  return rows;
}

}  // namespace tubedyn::geometry
