#include "contax/xpsq.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "contax/error.hpp"

namespace contax {

void XPSQ::validate() {
  for (int i = 0; i < 2; ++i) {
    if (!std::isfinite(eps1[i]) || !std::isfinite(eps2[i]))
      throw Error(ErrorKind::NonFiniteInput, "xpsq exponent is not finite");
    eps1[i] = std::clamp(eps1[i], kEpsMin, kEpsMax);
    eps2[i] = std::clamp(eps2[i], kEpsMin, kEpsMax);
    for (int j = 0; j < 3; ++j)
      if (!std::isfinite(scale[i][j]) || !(scale[i][j] > 0.0))
        throw Error(ErrorKind::InvalidParameter, "xpsq scale must be positive");
  }
  if (std::fabs(norm(up) - 1.0) > 1e-9) throw Error(ErrorKind::InvalidParameter, "xpsq up hint must be unit length");
  if (planes.size() + 1 > static_cast<size_t>(kMaxFanIn))
    throw Error(ErrorKind::Arity, "too many xpsq planes (limit " + std::to_string(kMaxFanIn - 1) + ")");
  for (const auto& row : planes) {
    Vec3d n[2];
    for (int i = 0; i < 2; ++i) {
      n[i] = {row[i][0], row[i][1], row[i][2]};
      if (std::fabs(norm(n[i]) - 1.0) > 1e-9)
        throw Error(ErrorKind::InvalidParameter, "xpsq plane normal must be unit length");
      if (!std::isfinite(row[i][3])) throw Error(ErrorKind::NonFiniteInput, "xpsq plane offset is not finite");
    }
    if (dot(n[0], n[1]) < -0.999)
      throw Error(ErrorKind::InvalidParameter, "xpsq plane normals at the two ends must not be opposite");
  }
}

std::pair<PSQ, Pose> instantiate_psq(const XPSQ& X, double t) {
  PSQ psq;
  psq.sq.eps1 = std::clamp(lerp_k(X.eps1[0], X.eps1[1], t), kEpsMin, kEpsMax);
  psq.sq.eps2 = std::clamp(lerp_k(X.eps2[0], X.eps2[1], t), kEpsMin, kEpsMax);
  for (int j = 0; j < 3; ++j) psq.sq.a[j] = lerp_k(X.scale[0][j], X.scale[1][j], t);
  for (const auto& row : X.planes) {
    Vec3d n{lerp_k(row[0][0], row[1][0], t), lerp_k(row[0][1], row[1][1], t), lerp_k(row[0][2], row[1][2], t)};
    n = n / norm(n);
    psq.planes.push_back({n.x, n.y, n.z, lerp_k(row[0][3], row[1][3], t)});
  }
  Pose pose;
  pose.R = moving_frame_k(X.spline, X.up, t);
  pose.t = spline_eval_k(X.spline, t);
  return {psq, pose};
}

double xpsq_sdf(const XPSQ& X, const Vec3d& q, const SmoothParams& params) {
  if (!std::isfinite(q.x) || !std::isfinite(q.y) || !std::isfinite(q.z))
    throw Error(ErrorKind::NonFiniteInput, "query point is not finite");
  return xpsq_sdf_k(X, q, params);
}

}  // namespace contax
