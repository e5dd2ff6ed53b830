#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "tubedyn/eigenmodes.hpp"
#include "tubedyn/induction.hpp"

using namespace tubedyn;
using namespace tubedyn::induction;

namespace {

constexpr double kPi = std::numbers::pi;

frenet::CurveGeometry untwisted(double kappa, double slope = 0.0) {
  return {LinearProfile{kappa, slope}, LinearProfile::constant(0.0), 0.0, 1.0};
}

// Few-ulp bound for a residual built from terms of magnitude up to `scale`.
double ulps(double scale, double n = 4.0) {
  return n * std::numeric_limits<double>::epsilon() * scale;
}

}  // namespace

TEST(RadialFieldTest, FiniteDifferenceFallbackMatchesClosedForm) {
  RadialField f{[](double r) { return std::sin(r); }, nullptr, nullptr};
  for (double r : {0.3, 1.0, 2.5}) {
    EXPECT_NEAR(f.d1(r), std::cos(r), 1e-9);
    EXPECT_NEAR(f.d2(r), -std::sin(r), 1e-7);
  }
}

TEST(TubeLaplacian, ConstantToroidalFieldOnStraightTubeVanishes) {
  FieldProfiles field;
  field.B_s = RadialField::constant(3.0);
  for (double r : {0.0, 0.2, 1.0, 4.0}) {
    const auto out = tube_laplacian(field, untwisted(0.0), geometry::CoordPoint::at(r, 0.3, 0.0));
    EXPECT_EQ(out.t, 0.0);
    EXPECT_EQ(out.n, 0.0);
  }
}

TEST(TubeLaplacian, LinearPoloidalFieldIsAnnihilated) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> c(-5.0, 5.0), r(1e-3, 10.0);
  for (int i = 0; i < 1000; ++i) {
    FieldProfiles field;
    field.B_theta = RadialField::linear(c(rng));
    const double rv = r(rng);
    const auto out = tube_laplacian(field, untwisted(0.7), geometry::CoordPoint::at(rv, 1.0, 0.0));
    EXPECT_NEAR(out.e_theta, 0.0, ulps(std::abs(field.B_theta.d1(rv)) / rv));
  }
}

TEST(TubeLaplacian, BesselToroidalProfileIsItsOwnEigenfunction) {
  FieldProfiles field;
  field.B_s = RadialField{[](double r) { return eigenmodes::bessel_j0(r); },
                          [](double r) { return -eigenmodes::bessel_j1(r); },
                          [](double r) {
                            return -eigenmodes::bessel_j0(r) + eigenmodes::bessel_j1(r) / r;
                          }};
  for (double r = 0.1; r <= 5.0; r += 0.01) {
    const auto out = tube_laplacian(field, untwisted(0.0), geometry::CoordPoint::at(r, 0.0, 0.0));
    EXPECT_NEAR(out.t, -eigenmodes::bessel_j0(r), 1e-8) << r;
  }
}

TEST(TubeLaplacian, BesselToroidalProfileFromSamplesOnly) {
  // No closed-form derivatives: central differences carry an O(eps / h^2) floor.
  FieldProfiles field;
  field.B_s = RadialField{[](double r) { return eigenmodes::bessel_j0(r); }, nullptr, nullptr};
  for (double r = 0.1; r <= 5.0; r += 0.05) {
    const auto out = tube_laplacian(field, untwisted(0.0), geometry::CoordPoint::at(r, 0.0, 0.0));
    EXPECT_NEAR(out.t, -eigenmodes::bessel_j0(r), 1e-6) << r;
  }
}

TEST(TubeLaplacian, CurvatureTermsEnterAsPrinted) {
  FieldProfiles field;
  field.B_s = RadialField::constant(2.0);
  const auto out =
      tube_laplacian(field, untwisted(0.5, 0.25), geometry::CoordPoint::at(1.0, 0.0, 2.0));
  const double kappa = 0.5 + 0.25 * 2.0;
  EXPECT_DOUBLE_EQ(out.t, -kappa * kappa * 2.0);
  EXPECT_DOUBLE_EQ(out.n, 0.25 * 2.0);
  EXPECT_EQ(out.e_r, 0.0);
  EXPECT_EQ(out.b, 0.0);
}

TEST(TubeLaplacian, AxisUsesRegularLimit) {
  FieldProfiles field;
  field.B_s = RadialField{[](double r) { return 1.0 - r * r; }, [](double r) { return -2.0 * r; },
                          [](double) { return -2.0; }};
  field.B_theta = RadialField::linear(1.5);
  const auto out = tube_laplacian(field, untwisted(0.0), geometry::CoordPoint::at(0.0, 0.0, 0.0));
  // [d_r^2 + (1/r) d_r](1 - r^2) = -4 everywhere, including the limit at r = 0.
  EXPECT_DOUBLE_EQ(out.t, -4.0);
  EXPECT_EQ(out.e_theta, 0.0);
}

TEST(TubeLaplacian, IrregularFieldsOnAxisAreDomainErrors) {
  FieldProfiles odd_bs;
  odd_bs.B_s = RadialField::linear(1.0);
  EXPECT_THROW(tube_laplacian(odd_bs, untwisted(0.0), geometry::CoordPoint::at(0.0, 0.0, 0.0)),
               DomainError);
  FieldProfiles even_btheta;
  even_btheta.B_theta = RadialField::constant(1.0);
  EXPECT_THROW(
      tube_laplacian(even_btheta, untwisted(0.0), geometry::CoordPoint::at(0.0, 0.0, 0.0)),
      DomainError);
}

TEST(Stretching, VanishesWithoutToroidalAndPoloidalField) {
  FieldDecomposition f;
  f.v_s = 0.0;
  f.B_theta = 0.0;
  f.B_s = 0.0;
  f.r = 0.7;
  const auto out = stretching_term(f, untwisted(0.9), 0.4);
  EXPECT_EQ(out.e_r, 0.0);
  EXPECT_EQ(out.e_theta, 0.0);
  EXPECT_EQ(out.t, 0.0);
  EXPECT_EQ(out.n, 0.0);
  EXPECT_EQ(out.b, 0.0);
}

TEST(Stretching, NormalComponentIsFlowTimesCurvatureTimesField) {
  FieldDecomposition f;
  f.B_s = 1.0;
  f.v_s = 2.0;
  f.r = 1.0;
  const auto out = stretching_term(f, untwisted(0.5), 0.0);
  EXPECT_DOUBLE_EQ(out.n, 1.0);
  // d_theta e_theta = -e_r carries the B_s term.
  EXPECT_DOUBLE_EQ(out.e_r, -1.0);
}

TEST(Stretching, PoloidalTermFollowsFrameDerivative) {
  FieldDecomposition f;
  f.B_theta = 1.0;
  f.omega0 = 3.0;
  f.r = 0.5;
  const auto out = stretching_term(f, untwisted(0.0), 1.1);
  EXPECT_DOUBLE_EQ(out.e_r, -1.0 / 0.5);
  EXPECT_EQ(out.n, 0.0);
  f.r = 0.0;
  EXPECT_THROW(stretching_term(f, untwisted(0.0), 1.1), DomainError);
}

TEST(ThinTube, ResidualsVanishForConsistentConfigurations) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-10.0, 10.0), th(0.0, kTwoPi);
  std::uniform_int_distribution<int> which(0, 2);
  for (int i = 0; i < 1000; ++i) {
    FieldDecomposition f;
    f.gamma = 0.0;
    f.B_theta = u(rng);
    f.omega0 = u(rng);
    f.B_s = u(rng);
    f.v_s = u(rng);
    double kappa = u(rng);
    switch (which(rng)) {
      case 0: f.B_s = 0.0; break;
      case 1: f.v_s = 0.0; break;
      default: kappa = 0.0; break;
    }
    const auto res = thin_tube_residuals(f, untwisted(kappa), th(rng));
    EXPECT_EQ(res.r1, 0.0);
    EXPECT_EQ(res.r2, 0.0);
    EXPECT_EQ(res.r3, 0.0);
  }
}

TEST(ThinTube, DiffusionlessGrowthLeavesThirdResidual) {
  FieldDecomposition f;
  f.gamma = 1.0;
  f.B_s = 1.0;
  EXPECT_EQ(thin_tube_residuals(f, untwisted(0.0), 0.3).r3, 1.0);
}

TEST(ThinTube, FirstResidualByDirectSubstitution) {
  FieldDecomposition f;
  f.gamma = 0.0;
  f.B_s = 1.0;
  f.v_s = 2.0;
  f.B_theta = 1.0;
  const auto res = thin_tube_residuals(f, untwisted(0.5), kPi / 2.0);
  EXPECT_DOUBLE_EQ(res.r1, -1.0);
  EXPECT_EQ(res.r2, 0.0);
}

TEST(ThinTube, SecondResidualDoesNotDependOnVorticity) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-10.0, 10.0), th(0.0, kTwoPi);
  for (int i = 0; i < 1000; ++i) {
    FieldDecomposition f;
    f.gamma = u(rng);
    f.B_theta = u(rng);
    f.B_s = u(rng);
    f.v_s = u(rng);
    const double theta = th(rng);
    f.omega0 = u(rng);
    const double a = thin_tube_residuals(f, untwisted(0.3), theta).r2;
    f.omega0 = u(rng);
    const double b = thin_tube_residuals(f, untwisted(0.3), theta).r2;
    // The printed omega0 terms cancel; only rounding of the cancelled pair remains.
    const double scale = std::abs(f.gamma * f.B_theta) + 10.0 * std::abs(f.B_theta);
    EXPECT_NEAR(a, b, ulps(scale));
    EXPECT_NEAR(a, -f.gamma * f.B_theta * std::cos(theta), ulps(scale));
  }
}

TEST(Constraints, UntwistedSolenoidalResidualIsIdenticallyZero) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> u(-10.0, 10.0), th(0.0, kTwoPi), r(0.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    FieldDecomposition f;
    f.B_theta = u(rng);
    f.dBtheta_ds = 0.0;  // B_theta constant in s
    f.r = r(rng);
    f.theta = th(rng);
    f.s = u(rng);
    const auto report = constraint_checks(f, untwisted(u(rng), u(rng)));
    EXPECT_EQ(report.value("solenoidal"), 0.0);
    EXPECT_EQ(report.value("untwisted_solenoidal"), 0.0);
  }
}

TEST(Constraints, TwistedSolenoidalResidualAsPrinted) {
  FieldDecomposition f;
  f.B_theta = 2.0;
  f.r = 0.5;
  f.theta = kPi / 2.0;
  f.dBtheta_ds = 0.3;
  const frenet::CurveGeometry curve{LinearProfile::constant(1.5), LinearProfile::constant(0.4), 0.0,
                                    1.0};
  const auto report = constraint_checks(f, curve);
  EXPECT_DOUBLE_EQ(report.value("solenoidal"), 0.3 - 1.5 * 0.4 * 0.5 * 1.0 * 2.0);
}

TEST(Constraints, FlowDivergenceIsNormalFlowTimesCurvature) {
  FieldDecomposition f;
  EXPECT_EQ(constraint_checks(f, untwisted(0.5)).value("flow_divergence"), 0.0);
  f.v_n = 2.0;
  EXPECT_DOUBLE_EQ(constraint_checks(f, untwisted(0.5)).value("flow_divergence"), 1.0);
}

TEST(Constraints, RigidVorticityAndIncompressibility) {
  FieldDecomposition f;
  f.omega0 = 3.0;
  f.r = 0.5;
  f.v_theta = 1.5;
  const auto report = constraint_checks(f, untwisted(0.0));
  EXPECT_EQ(report.value("vorticity"), 0.0);
  EXPECT_EQ(report.value("incompressible_flow"), 0.0);
  f.dvtheta_ds = 0.2;
  f.v_theta = 1.0;
  const auto bad = constraint_checks(f, untwisted(0.0));
  EXPECT_DOUBLE_EQ(bad.value("vorticity"), -0.5);
  EXPECT_DOUBLE_EQ(bad.value("incompressible_flow"), 0.2);
  EXPECT_THROW(bad.value("nope"), std::out_of_range);
}
