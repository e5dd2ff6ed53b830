#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tubedyn/eigenmodes.hpp"
#include "tubedyn/frenet.hpp"
#include "tubedyn/induction.hpp"

namespace tubedyn::classifier {

enum class Regime { FastDynamo, SlowDynamo, Marginal, Decaying, NonDynamo };

std::string to_string(Regime regime);

inline constexpr double kRegimeTolerance = 1e-12;

// Decaying:    gamma < -tol
// Marginal:    |gamma| <= tol
// FastDynamo:  gamma > tol and gamma_limit > tol
// SlowDynamo:  gamma > tol and gamma_limit <= tol
// NonDynamo:   gamma structurally forced to zero, whatever its value.
Regime classify_regime(double gamma, double gamma_limit, bool structurally_forced = false);

struct Residual {
  std::string name;
  double value = 0.0;
};

struct RegimeReport {
  double gamma = 0.0;
  double gamma_diffusionless_limit = 0.0;
  Regime regime = Regime::Marginal;
  std::vector<Residual> constraints;
  // Human-readable notes: violated constraints, disagreements with stated claims.
  std::vector<std::string> flags;
  // Marginal near-axis poloidal profile B_theta = B0 r, when one applies.
  std::optional<eigenmodes::RadialProfile> poloidal_profile;

  double residual(const std::string& name) const;
};

// Untwisted thin tube. eta == 0: gamma*B_s = 0 forces gamma = 0 (NonDynamo
// when B_s != 0) and the residual B_s v_s kappa is reported. eta > 0: the
// marginal diffusive solution, with its B_theta = B0 r profile attached.
// Throws std::invalid_argument for a twisted curve or eta < 0.
RegimeReport classify_thin_tube(const induction::FieldDecomposition& field,
                                const frenet::CurveGeometry& curve, double eta);

struct FilamentConfig {
  double kappa0 = 0.0;
  double tau0 = 0.0;
  double eta = 0.0;
  double v_s = 0.0;
  double v_n = 0.0;
  double v_b = 0.0;
  double B_s = 0.0;
  double B_n = 0.0;
  double B_b = 0.0;
  bool helical = false;  // requires tau0 == kappa0
};

// Case split:
//   helical:   gamma = tau0 (1 + eta tau0), limit tau0
//   B_s != 0:  gamma = 0, with v_s tau (B_n + B_b) = 0 as a constraint
//   B_s == 0:  gamma = v_s tau0
// Throws std::invalid_argument for a helical config with tau0 != kappa0.
RegimeReport filament_growth_rate(const FilamentConfig& config);

struct ThickTubeConstraintSolution {
  double v_s = 0.0;        // shear flow eta r
  double dkappa_ds = 0.0;  // 1 / cos(theta)
  LinearProfile kappa;     // s / cos(theta) + c0
  double lhs = 0.0;        // v_s / (r cos(theta))
  double rhs = 0.0;        // eta dkappa/ds
  // lhs - rhs in exact rational arithmetic, with v_s = eta r and
  // dkappa/ds = 1/cos(theta) taken as exact values of the double inputs.
  // rounded_residual is the plain double evaluation; it is off by a few ulps.
  double residual = 0.0;
  double rounded_residual = 0.0;
  bool degenerate = false; // eta == 0: the constraint no longer fixes kappa
};

// Throws DomainError when cos(theta) == 0, std::invalid_argument for eta < 0 or r <= 0.
ThickTubeConstraintSolution thick_tube_constraints(double eta, double theta, double r,
                                                   double c0 = 0.0);

}  // namespace tubedyn::classifier
