#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tubedyn::eigenmodes {

// Samples of a radial function on the uniform grid r_i = i * R_max / (n - 1).
struct RadialProfile {
  std::vector<double> r;
  std::vector<double> values;

  static constexpr std::size_t kMinPoints = 16;

  // Zero-valued profile; throws std::invalid_argument for n < kMinPoints or R_max <= 0.
  static RadialProfile uniform(double r_max, std::size_t n);

  std::size_t size() const { return r.size(); }
  double spacing() const { return r[1] - r[0]; }
  double max_abs() const;
};

// Bessel function of the first kind, integer order n >= 0. Power series in
// extended precision for |x| <= 12, Hankel asymptotic expansion truncated at
// its smallest term beyond.
double bessel_j(int n, double x);
double bessel_j0(double x);
double bessel_j1(double x);

// Modified Bessel function I0 (power series).
double bessel_i0(double x);

// First `count` positive zeros of J_n.
std::vector<double> bessel_j_zeros(int n, std::size_t count);

// Regular solution of [d_r^2 + (1/r) d_r - gamma/eta] B = 0 with B(0) = 1.
struct ToroidalMode {
  RadialProfile profile;
  std::vector<double> slope;  // dB/dr at the grid points
  // "J0", "I0" or "constant": the closed form the profile was checked against.
  std::string closed_form;
  double closed_form_max_deviation = 0.0;
  // gamma == 0: the profile is constant, so the toroidal field does not
  // oscillate radially despite the J0 factor.
  bool constant_marginal_profile = false;
};

// Integrates outward from the regular series start at r = grid spacing with
// an adaptive Dormand-Prince 5(4) stepper, then compares with J0/I0.
// Throws std::invalid_argument for eta <= 0, R_max <= 0 or n < 16.
ToroidalMode solve_toroidal_mode(double gamma, double eta, double r_max, std::size_t n);

// max over interior grid points of |B'' + B'/r - (gamma/eta) B| using
// second-order differences on the grid.
double toroidal_operator_residual(const RadialProfile& profile, double gamma, double eta);

inline constexpr double kNearAxisValidity = 0.1;

struct PoloidalNearAxis {
  double value = 0.0;                // B_theta = B0 r
  double near_axis_residual = 0.0;   // [d_r - 1/r] B_theta
  double full_residual = 0.0;        // [d_r - (gamma r/eta + 1/r)] B_theta
  double approximation_parameter = 0.0;  // gamma r^2 / eta
  bool within_approximation = true;      // |gamma r^2 / eta| <= 0.1
};

// Marginal near-axis poloidal solution B_theta = B0 r. Throws
// std::invalid_argument for r < 0 or eta <= 0.
PoloidalNearAxis solve_poloidal_near_axis(double b0, double gamma, double eta, double r);

}  // namespace tubedyn::eigenmodes
