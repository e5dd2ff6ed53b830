#include "tubedyn/frenet.hpp"

#include <algorithm>
#include <stdexcept>

namespace tubedyn::frenet {
namespace {

struct State {
  Vec3 t, n, b, x;
};

State derivative(const State& y, double kappa, double tau) {
  return {kappa * y.n, tau * y.b - kappa * y.t, -tau * y.n, y.t};
}

State axpy(const State& y, double h, const State& k) {
  return {y.t + h * k.t, y.n + h * k.n, y.b + h * k.b, y.x + h * k.x};
}

Vec3 normalized(const Vec3& v) {
  const double len = norm(v);
  if (len == 0.0) throw std::invalid_argument("cannot normalize a zero vector");
  return (1.0 / len) * v;
}

}  // namespace

bool CurveGeometry::helical() const {
  return kappa.slope == 0.0 && tau.slope == 0.0 && kappa.offset == tau.offset;
}

double FrenetFrame::orthonormality_defect() const {
  const Vec3 txn = cross(t, n);
  return std::max({std::abs(norm(t) - 1.0), std::abs(norm(n) - 1.0), std::abs(norm(b) - 1.0),
                   std::abs(dot(t, n)), std::abs(dot(t, b)), std::abs(dot(n, b)),
                   norm(b - txn)});
}

FrenetFrame reorthonormalize(FrenetFrame frame) {
  frame.t = normalized(frame.t);
  frame.n = normalized(frame.n - dot(frame.n, frame.t) * frame.t);
  frame.b = normalized(frame.b - dot(frame.b, frame.t) * frame.t - dot(frame.b, frame.n) * frame.n);
  return frame;
}

std::vector<FrenetFrame> transport_frame(const CurveGeometry& curve, const FrenetFrame& init,
                                         std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("transport_frame needs at least one step");
  if (init.orthonormality_defect() > kFrameTolerance) {
    throw std::invalid_argument("initial Frenet frame is not right-handed orthonormal");
  }

  const double h = curve.span() / static_cast<double>(steps);
  std::vector<FrenetFrame> frames;
  frames.reserve(steps + 1);
  FrenetFrame current = init;
  current.s = curve.s_begin;
  frames.push_back(current);

  State y{current.t, current.n, current.b, current.position};
  for (std::size_t step = 1; step <= steps; ++step) {
    const double s0 = curve.s_begin + static_cast<double>(step - 1) * h;
    const double sm = s0 + 0.5 * h;
    const double s1 = curve.s_begin + static_cast<double>(step) * h;
    const State k1 = derivative(y, curve.kappa(s0), curve.tau(s0));
    const State k2 = derivative(axpy(y, 0.5 * h, k1), curve.kappa(sm), curve.tau(sm));
    const State k3 = derivative(axpy(y, 0.5 * h, k2), curve.kappa(sm), curve.tau(sm));
    const State k4 = derivative(axpy(y, h, k3), curve.kappa(s1), curve.tau(s1));
    y = axpy(y, h / 6.0, k1);
    y = axpy(y, h / 3.0, k2);
    y = axpy(y, h / 3.0, k3);
    y = axpy(y, h / 6.0, k4);

    FrenetFrame frame{y.t, y.n, y.b, y.x, s1};
    if (step % kReorthonormalizeEvery == 0) {
      frame = reorthonormalize(frame);
      y = {frame.t, frame.n, frame.b, frame.position};
    }
    frames.push_back(frame);
  }
  return frames;
}

FrameDerivativeTerms frame_derivative_terms(const CurveGeometry& curve, double theta,
                                            double s) {
  FrameDerivativeTerms terms;
  const double tau = curve.tau(s);
  terms.ds_etheta_along_t = tau == 0.0 ? 0.0 : -tau * std::sin(theta);
  return terms;
}

}  // namespace tubedyn::frenet
