#pragma once

// Induction-equation operators on a thin untwisted flux tube, expressed in
// the tube basis (e_r, e_theta) together with the Frenet frame (t, n, b).

#include <functional>
#include <string>
#include <vector>

#include "tubedyn/frenet.hpp"
#include "tubedyn/geometry.hpp"

namespace tubedyn::induction {

// Step for radial derivatives of profiles without closed-form derivatives.
inline constexpr double kRadialStep = 1e-5;
// Second differences lose eps/h^2, so they use a wider step.
inline constexpr double kRadialSecondStep = 1e-4;

// A radial profile B(r), with optional closed-form derivatives.
struct RadialField {
  std::function<double(double)> value;
  std::function<double(double)> first;
  std::function<double(double)> second;

  double operator()(double r) const { return value(r); }
  double d1(double r) const;
  double d2(double r) const;

  static RadialField constant(double c);
  static RadialField linear(double slope);  // B = slope * r
};

// Field and flow components at one station (r, theta, s) of the tube.
struct FieldDecomposition {
  double B_r = 0.0;
  double B_theta = 0.0;
  double B_s = 0.0;
  double v_s = 0.0;
  double v_theta = 0.0;
  double v_n = 0.0;
  double v_b = 0.0;
  double omega0 = 0.0;  // rigid vorticity, v_theta = omega0 r
  double gamma = 0.0;   // growth rate
  double eta = 0.0;     // diffusivity
  double dBtheta_ds = 0.0;
  double dvtheta_ds = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double s = 0.0;
};

struct FieldProfiles {
  RadialField B_s = RadialField::constant(0.0);
  RadialField B_theta = RadialField::constant(0.0);
};

// Components along the tube basis and the Frenet frame.
struct TubeVector {
  double e_r = 0.0;
  double e_theta = 0.0;
  double t = 0.0;
  double n = 0.0;
  double b = 0.0;
};

// Thin-tube Laplacian, as printed:
//   t:       [d_r^2 + (1/r) d_r - kappa^2] B_s
//   e_theta: [d_r^2 + (1/r) d_r - 1/r^2] B_theta
//   n:       (d kappa / ds) B_s
// At r = 0 the regular limits are used; a B_s with nonzero slope or a B_theta
// that does not vanish on the axis is a DomainError.
TubeVector tube_laplacian(const FieldProfiles& field, const frenet::CurveGeometry& curve,
                          const geometry::CoordPoint& p);

// B . grad v = (1/K)[d_theta e_theta + v_s kappa n] B_s + (1/r) B_theta d_theta e_theta
// with K = 1 and d_theta e_theta = -e_r.
TubeVector stretching_term(const FieldDecomposition& field, const frenet::CurveGeometry& curve,
                           double theta);

// Residual = left side - right side of the three printed frame-component
// equations of the diffusionless thin tube.
struct ThinTubeResiduals {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
};

ThinTubeResiduals thin_tube_residuals(const FieldDecomposition& field,
                                      const frenet::CurveGeometry& curve, double theta);

struct ConstraintEntry {
  std::string name;
  double value = 0.0;
};

struct ConstraintReport {
  std::vector<ConstraintEntry> entries;

  double value(const std::string& name) const;
};

// solenoidal:            d_s B_theta - kappa tau r sin(theta) B_theta
// untwisted_solenoidal:  d_s B_theta
// incompressible_flow:   d_s v_theta
// vorticity:             v_theta - omega0 r
// flow_divergence:       v_n kappa   (nonzero means compressible filament flow)
ConstraintReport constraint_checks(const FieldDecomposition& field,
                                   const frenet::CurveGeometry& curve);

}  // namespace tubedyn::induction
