#pragma once

#include <array>
#include <utility>
#include <vector>

#include "contax/geometry.hpp"
#include "contax/spline.hpp"

namespace contax {

// A PSQ swept along a quadratic spline. Every schedule is given by its values
// at t = 0 and t = 1 and interpolated linearly in between.
struct XPSQ {
  QuadSpline spline;
  Vec3d up{0.0, 0.0, 1.0};
  std::array<double, 2> eps1{1.0, 1.0};
  std::array<double, 2> eps2{1.0, 1.0};
  std::array<Vec3d, 2> scale{Vec3d{1.0, 1.0, 1.0}, Vec3d{1.0, 1.0, 1.0}};
  // Row i: {plane at t=0, plane at t=1}, each [nx, ny, nz, h] in the PSQ frame.
  std::vector<std::array<std::array<double, 4>, 2>> planes;

  // Clamps eps, checks scales, plane normals and the up hint.
  void validate();
};

template <class S>
inline S lerp_k(double v0, double v1, const S& t) {
  return v0 + (v1 - v0) * t;
}

template <class S>
inline S xpsq_sdf_k(const XPSQ& X, const Vec3<S>& q, const SmoothParams& params) {
  const auto sol = project_point_k(X.spline, q, params);
  const int np = static_cast<int>(X.planes.size());
  S phis[3];
  for (int k = 0; k < 3; ++k) {
    const S& t = sol.t[k];
    const Mat3<S> R = moving_frame_k(X.spline, X.up, t);
    const Vec3<S> pos = spline_eval_k(X.spline, t);
    const Vec3<S> local = mul_transpose(R, Vec3<S>(q - pos));
    const S e1 = lerp_k(X.eps1[0], X.eps1[1], t);
    const S e2 = lerp_k(X.eps2[0], X.eps2[1], t);
    const Vec3<S> a(lerp_k(X.scale[0].x, X.scale[1].x, t), lerp_k(X.scale[0].y, X.scale[1].y, t),
                    lerp_k(X.scale[0].z, X.scale[1].z, t));
    const S sq = sq_sdf_k(e1, e2, a, local);
    if (np == 0) {
      phis[k] = sq;
      continue;
    }
    S ops[kMaxFanIn];
    ops[0] = sq;
    for (int i = 0; i < np; ++i) {
      const auto& r0 = X.planes[i][0];
      const auto& r1 = X.planes[i][1];
      const Vec3<S> n(lerp_k(r0[0], r1[0], t), lerp_k(r0[1], r1[1], t), lerp_k(r0[2], r1[2], t));
      ops[i + 1] = dot(n, local) / norm(n) + lerp_k(r0[3], r1[3], t);
    }
    phis[k] = smooth::lse(ops, np + 1, params.tau_min);
  }
  return smooth::smin(phis, 3, params.tau_min);
}

// The PSQ and its placement prescribed at parameter t.
std::pair<PSQ, Pose> instantiate_psq(const XPSQ& X, double t);
double xpsq_sdf(const XPSQ& X, const Vec3d& q, const SmoothParams& params);

}  // namespace contax
