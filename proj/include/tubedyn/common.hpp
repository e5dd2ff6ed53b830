#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tubedyn {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Raised when a point or parameter leaves the domain where an operation is
// defined (degenerate metric, negative radius, singular profile, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Affine profile f(s) = offset + slope * s. Covers constant curvature and
// torsion as well as the linear curvature of the slow-dynamo shear flow.
struct LinearProfile {
  double offset = 0.0;
  double slope = 0.0;

  constexpr double operator()(double s) const { return offset + slope * s; }
  constexpr double derivative() const { return slope; }
  constexpr bool identically_zero() const { return offset == 0.0 && slope == 0.0; }

  static constexpr LinearProfile constant(double value) { return {value, 0.0}; }
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 operator*(double c, const Vec3& a) { return {c * a[0], c * a[1], c * a[2]}; }

}  // namespace tubedyn
