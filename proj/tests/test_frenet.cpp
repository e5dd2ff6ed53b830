#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tubedyn/frenet.hpp"

using namespace tubedyn;
using namespace tubedyn::frenet;

namespace {

constexpr double kPi = std::numbers::pi;

double max_dev(const Vec3& a, const Vec3& b) {
  return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

// Frame at arclength s for constant kappa, tau: rotation exp(s A) of the
// initial frame where A is the antisymmetric Frenet generator. Rodrigues'
// formula about the Darboux vector w = tau t0 + kappa b0.
FrenetFrame closed_form(double kappa, double tau, const FrenetFrame& f0, double s) {
  const double w = std::hypot(kappa, tau);
  FrenetFrame out = f0;
  out.s = f0.s + s;
  if (w == 0.0) {
    out.position = f0.position + s * f0.t;
    return out;
  }
  const Vec3 axis = (1.0 / w) * (tau * f0.t + kappa * f0.b);
  auto rotate = [&](const Vec3& v, double angle) {
    const double c = std::cos(angle), sn = std::sin(angle);
    return (c * v) + (sn * cross(axis, v)) + ((1.0 - c) * dot(axis, v)) * axis;
  };
  out.t = rotate(f0.t, w * s);
  out.n = rotate(f0.n, w * s);
  out.b = rotate(f0.b, w * s);
  // Integral of t: the axial part advances linearly, the transverse part rotates.
  const Vec3 along = dot(axis, f0.t) * axis;
  const Vec3 perp = f0.t - along;
  const Vec3 turned = cross(axis, perp);
  const double ws = w * s;
  out.position = f0.position + s * along + (std::sin(ws) / w) * perp +
                 ((1.0 - std::cos(ws)) / w) * turned;
  return out;
}

FrenetFrame random_frame(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec3 t{g(rng), g(rng), g(rng)};
  t = (1.0 / norm(t)) * t;
  Vec3 n{g(rng), g(rng), g(rng)};
  n = n - dot(n, t) * t;
  n = (1.0 / norm(n)) * n;
  FrenetFrame f;
  f.t = t;
  f.n = n;
  f.b = cross(t, n);
  f.position = {g(rng), g(rng), g(rng)};
  return f;
}

}  // namespace

TEST(Transport, StraightLineWhenCurvatureAndTorsionVanish) {
  const CurveGeometry curve{LinearProfile::constant(0.0), LinearProfile::constant(0.0), 0.0, 3.0};
  std::mt19937_64 rng(21);
  const auto init = random_frame(rng);
  const auto frames = transport_frame(curve, init, 300);
  ASSERT_EQ(frames.size(), 301u);
  for (const auto& f : frames) {
    EXPECT_LT(max_dev(f.t, init.t), 1e-15);
    EXPECT_LT(max_dev(f.n, init.n), 1e-15);
    EXPECT_LT(max_dev(f.b, init.b), 1e-15);
    EXPECT_LT(max_dev(f.position, init.position + (f.s - 0.0) * init.t), 1e-12);
  }
}

TEST(Transport, UnitCircleClosesAfterTwoPi) {
  const CurveGeometry curve{LinearProfile::constant(1.0), LinearProfile::constant(0.0), 0.0, kTwoPi};
  const FrenetFrame init;
  const auto frames = transport_frame(curve, init, 10000);
  const auto& last = frames.back();
  EXPECT_NEAR(last.s, kTwoPi, 1e-12);
  EXPECT_LT(max_dev(last.t, init.t), 1e-6);
  EXPECT_LT(max_dev(last.n, init.n), 1e-6);
  EXPECT_LT(max_dev(last.b, init.b), 1e-6);
  EXPECT_LT(max_dev(last.position, init.position), 1e-6);
  // Radius 1: every point lies on the circle around the centre init.n.
  for (const auto& f : frames) EXPECT_NEAR(norm(f.position - init.n), 1.0, 1e-9);
}

TEST(Transport, HelixKeepsUnitTangentAndConstantAxisAngle) {
  const CurveGeometry curve{LinearProfile::constant(1.0), LinearProfile::constant(1.0), 0.0, 20.0};
  const FrenetFrame init;
  const auto frames = transport_frame(curve, init, 20000);
  // The helix axis is the Darboux direction (tau t + kappa b) / |.|.
  const Vec3 axis = (1.0 / std::sqrt(2.0)) * (init.t + init.b);
  const double c0 = dot(init.t, axis);
  for (const auto& f : frames) {
    EXPECT_NEAR(norm(f.t), 1.0, 1e-9);
    EXPECT_NEAR(dot(f.t, axis), c0, 1e-6);
  }
}

TEST(Transport, MatchesRotationClosedFormForConstantProfiles) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double kappa = u(rng), tau = u(rng);
    const CurveGeometry curve{LinearProfile::constant(kappa), LinearProfile::constant(tau), 0.0, 5.0};
    const auto init = random_frame(rng);
    const auto frames = transport_frame(curve, init, 5000);
    for (std::size_t i = 0; i < frames.size(); i += 500) {
      const auto exact = closed_form(kappa, tau, init, frames[i].s);
      EXPECT_LT(max_dev(frames[i].t, exact.t), 1e-6);
      EXPECT_LT(max_dev(frames[i].n, exact.n), 1e-6);
      EXPECT_LT(max_dev(frames[i].b, exact.b), 1e-6);
      EXPECT_LT(max_dev(frames[i].position, exact.position), 1e-6);
    }
  }
}

TEST(Transport, OrthonormalityDriftStaysBounded) {
  const CurveGeometry curve{LinearProfile{0.5, 0.3}, LinearProfile::constant(-0.7), 0.0, 10.0};
  const auto frames = transport_frame(curve, FrenetFrame{}, 10000);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const double d = frames[i].orthonormality_defect();
    if (i % kReorthonormalizeEvery == 0) {
      EXPECT_LT(d, 1e-9) << i;
    } else {
      EXPECT_LT(d, 1e-6) << i;
    }
  }
}

TEST(Transport, ForwardThenBackwardReturnsInitialFrame) {
  std::mt19937_64 rng(23);
  const CurveGeometry forward{LinearProfile{0.4, 0.2}, LinearProfile{-0.3, 0.1}, 0.0, 4.0};
  const CurveGeometry backward{forward.kappa, forward.tau, 4.0, 0.0};
  const auto init = random_frame(rng);
  const auto out = transport_frame(forward, init, 4000).back();
  const auto back = transport_frame(backward, out, 4000).back();
  EXPECT_NEAR(back.s, 0.0, 1e-12);
  EXPECT_LT(max_dev(back.t, init.t), 1e-6);
  EXPECT_LT(max_dev(back.n, init.n), 1e-6);
  EXPECT_LT(max_dev(back.b, init.b), 1e-6);
  EXPECT_LT(max_dev(back.position, init.position), 1e-6);
}

TEST(Transport, RejectsBadInput) {
  const CurveGeometry curve{LinearProfile::constant(1.0), LinearProfile::constant(0.0), 0.0, 1.0};
  EXPECT_THROW(transport_frame(curve, FrenetFrame{}, 0), std::invalid_argument);
  FrenetFrame skew;
  skew.n = {0.1, 1.0, 0.0};
  EXPECT_THROW(transport_frame(curve, skew, 10), std::invalid_argument);
  FrenetFrame left;
  left.b = {0.0, 0.0, -1.0};
  EXPECT_THROW(transport_frame(curve, left, 10), std::invalid_argument);
}

TEST(Transport, ReorthonormalizeRestoresAnOrthonormalFrame) {
  FrenetFrame f;
  f.t = {1.0, 1e-4, 0.0};
  f.n = {2e-4, 1.0, 1e-4};
  f.b = {0.0, 0.0, 1.0001};
  const auto g = reorthonormalize(f);
  EXPECT_LT(g.orthonormality_defect(), 1e-15);
  EXPECT_LT(max_dev(g.t, (1.0 / norm(f.t)) * f.t), 1e-15);
}

TEST(CurveGeometryTest, HelicalAndUntwisted) {
  const CurveGeometry helix{LinearProfile::constant(0.8), LinearProfile::constant(0.8), 0.0, 1.0};
  EXPECT_TRUE(helix.helical());
  EXPECT_FALSE(helix.untwisted());
  const CurveGeometry flat{LinearProfile::constant(0.8), LinearProfile::constant(0.0), 0.0, 1.0};
  EXPECT_FALSE(flat.helical());
  EXPECT_TRUE(flat.untwisted());
  const CurveGeometry ramp{LinearProfile{0.8, 0.1}, LinearProfile::constant(0.8), 0.0, 1.0};
  EXPECT_FALSE(ramp.helical());
}

TEST(FrameDerivatives, ZeroTorsionKillsTheArclengthTerm) {
  const CurveGeometry curve{LinearProfile::constant(2.0), LinearProfile::constant(0.0), 0.0, 1.0};
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> th(0.0, kTwoPi);
  for (int i = 0; i < 50; ++i) {
    const auto terms = frame_derivative_terms(curve, th(rng), 0.3);
    EXPECT_EQ(terms.ds_etheta_along_t, 0.0);
    EXPECT_EQ(terms.dtheta_er_along_etheta, 1.0);
    EXPECT_EQ(terms.dr_etheta_along_er, -1.0);
  }
}

TEST(FrameDerivatives, UnitTorsionAtQuarterTurn) {
  const CurveGeometry curve{LinearProfile::constant(1.0), LinearProfile::constant(1.0), 0.0, 1.0};
  const auto terms = frame_derivative_terms(curve, kPi / 2.0, 0.0);
  EXPECT_DOUBLE_EQ(terms.ds_etheta_along_t, -1.0);
  EXPECT_EQ(terms.dtheta_er_along_etheta, 1.0);
}

TEST(FrameDerivatives, ArclengthTermFollowsTorsionProfile) {
  const CurveGeometry curve{LinearProfile::constant(1.0), LinearProfile{0.5, 2.0}, 0.0, 1.0};
  const auto terms = frame_derivative_terms(curve, 0.4, 1.5);
  EXPECT_DOUBLE_EQ(terms.ds_etheta_along_t, -(0.5 + 2.0 * 1.5) * std::sin(0.4));
}
