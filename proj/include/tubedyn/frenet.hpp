#pragma once

#include <cstddef>
#include <vector>

#include "tubedyn/common.hpp"

namespace tubedyn::frenet {

struct CurveGeometry {
  LinearProfile kappa;
  LinearProfile tau;
  double s_begin = 0.0;
  double s_end = 1.0;  // may be smaller than s_begin to transport backwards

  double span() const { return s_end - s_begin; }
  bool untwisted() const { return tau.identically_zero(); }
  // Constant curvature equal to the constant torsion.
  bool helical() const;
};

struct FrenetFrame {
  Vec3 t{1.0, 0.0, 0.0};
  Vec3 n{0.0, 1.0, 0.0};
  Vec3 b{0.0, 0.0, 1.0};
  Vec3 position{0.0, 0.0, 0.0};
  double s = 0.0;

  // max over |t|,|n|,|b| - 1, pairwise dot products and |b - t x n|.
  double orthonormality_defect() const;
};

inline constexpr double kFrameTolerance = 1e-9;
inline constexpr std::size_t kReorthonormalizeEvery = 100;

// Gram-Schmidt in the order t, n, b.
FrenetFrame reorthonormalize(FrenetFrame frame);

// Integrates dt/ds = kappa n, dn/ds = -kappa t + tau b, db/ds = -tau n and
// dx/ds = t with classical RK4 on a fixed step span/steps. The frame is
// re-orthonormalized every kReorthonormalizeEvery steps. Returns steps + 1
// frames including the initial one (stamped with s = s_begin).
//
// Throws std::invalid_argument if steps == 0 or init is not orthonormal.
std::vector<FrenetFrame> transport_frame(const CurveGeometry& curve, const FrenetFrame& init,
                                         std::size_t steps);

// Frame derivatives of the tube basis for an untwisted tube, as printed:
//   d_s e_theta = -tau sin(theta) t,  d_theta e_r = e_theta,  d_r e_theta = -e_r.
struct FrameDerivativeTerms {
  double ds_etheta_along_t = 0.0;
  double dtheta_er_along_etheta = 1.0;
  double dr_etheta_along_er = -1.0;
};

FrameDerivativeTerms frame_derivative_terms(const CurveGeometry& curve, double theta,
                                            double s);

}  // namespace tubedyn::frenet
