#include "tubedyn/induction.hpp"

#include <cmath>
#include <stdexcept>

namespace tubedyn::induction {
namespace {

constexpr double kAxisRegularityTolerance = 1e-8;

}  // namespace

double RadialField::d1(double r) const {
  if (first) return first(r);
  return (value(r + kRadialStep) - value(r - kRadialStep)) / (2.0 * kRadialStep);
}

double RadialField::d2(double r) const {
  if (second) return second(r);
  if (first) {
    return (first(r + kRadialStep) - first(r - kRadialStep)) / (2.0 * kRadialStep);
  }
  const double h = kRadialSecondStep;
  return (value(r + h) - 2.0 * value(r) + value(r - h)) / (h * h);
}

RadialField RadialField::constant(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
}

RadialField RadialField::linear(double slope) {
  return {[slope](double r) { return slope * r; }, [slope](double) { return slope; },
          [](double) { return 0.0; }};
}

TubeVector tube_laplacian(const FieldProfiles& field, const frenet::CurveGeometry& curve,
                          const geometry::CoordPoint& p) {
  const double r = p.r;
  const double kappa = curve.kappa(p.s);
  TubeVector out;

  const double bs = field.B_s(r);
  if (r > 0.0) {
    out.t = field.B_s.d2(r) + field.B_s.d1(r) / r - kappa * kappa * bs;
    out.e_theta = field.B_theta.d2(r) + field.B_theta.d1(r) / r - field.B_theta(r) / (r * r);
  } else {
    // B_s even: (1/r) d_r B_s -> d_r^2 B_s. B_theta odd: the operator vanishes on axis.
    if (std::abs(field.B_s.d1(0.0)) > kAxisRegularityTolerance) {
      throw DomainError("tube Laplacian at r = 0 needs an even B_s (zero slope on axis)");
    }
    if (std::abs(field.B_theta(0.0)) > kAxisRegularityTolerance) {
      throw DomainError("tube Laplacian at r = 0 needs an odd B_theta (zero on axis)");
    }
    out.t = 2.0 * field.B_s.d2(0.0) - kappa * kappa * bs;
    out.e_theta = 0.0;
  }
  out.n = curve.kappa.derivative() * bs;
  return out;
}

TubeVector stretching_term(const FieldDecomposition& field, const frenet::CurveGeometry& curve,
                           double theta) {
  const double k_factor = 1.0;
  const double kappa = curve.kappa(field.s);
  // d_theta e_theta = -e_r: the rotation generator of d_theta e_r = e_theta.
  const auto terms = frenet::frame_derivative_terms(curve, theta, field.s);
  const double dtheta_etheta_along_er = -terms.dtheta_er_along_etheta;

  TubeVector out;
  out.e_r = dtheta_etheta_along_er * field.B_s / k_factor;
  out.n = field.v_s * kappa * field.B_s / k_factor;
  if (field.B_theta != 0.0) {
    if (field.r <= 0.0) throw DomainError("poloidal stretching term is singular at r = 0");
    out.e_r += field.B_theta / field.r * dtheta_etheta_along_er;
  }
  return out;
}

ThinTubeResiduals thin_tube_residuals(const FieldDecomposition& field,
                                      const frenet::CurveGeometry& curve, double theta) {
  const double kappa = curve.kappa(field.s);
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double g = field.gamma;
  const double w = field.omega0;
  const double bt = field.B_theta;

  ThinTubeResiduals res;
  res.r1 = (-g * bt * st - w * bt * ct) - (field.B_s * field.v_s * kappa - w * bt * ct);
  res.r2 = (-g * bt * ct - w * bt * st) - (-w * bt * st);
  res.r3 = g * field.B_s;
  return res;
}

double ConstraintReport::value(const std::string& name) const {
  for (const auto& entry : entries) {
    if (entry.name == name) return entry.value;
  }
  throw std::out_of_range("no constraint named " + name);
}

ConstraintReport constraint_checks(const FieldDecomposition& field,
                                   const frenet::CurveGeometry& curve) {
  const double kappa = curve.kappa(field.s);
  const double tau = curve.tau(field.s);
  ConstraintReport report;
  report.entries = {
      {"solenoidal",
       field.dBtheta_ds - kappa * tau * field.r * std::sin(field.theta) * field.B_theta},
      {"untwisted_solenoidal", field.dBtheta_ds},
      {"incompressible_flow", field.dvtheta_ds},
      {"vorticity", field.v_theta - field.omega0 * field.r},
      {"flow_divergence", field.v_n * kappa},
  };
  return report;
}

}  // namespace tubedyn::induction
