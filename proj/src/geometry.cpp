#include "contax/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "contax/error.hpp"

namespace contax {

Pose Pose::from_quaternion(double w, double x, double y, double z, const Vec3d& t) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!std::isfinite(n)) throw Error(ErrorKind::NonFiniteInput, "rotation quaternion is not finite");
  if (n == 0.0) throw Error(ErrorKind::InvalidParameter, "rotation quaternion must be non-zero");
  if (!std::isfinite(t.x) || !std::isfinite(t.y) || !std::isfinite(t.z))
    throw Error(ErrorKind::NonFiniteInput, "pose translation is not finite");
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  Pose p;
  p.R.m = {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
            {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
            {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
  p.t = t;
  return p;
}

std::array<double, 4> Pose::quaternion() const {
  const auto& m = R.m;
  const double tr = m[0][0] + m[1][1] + m[2][2];
  double w, x, y, z;
  if (tr > 0) {
    const double s = std::sqrt(tr + 1.0) * 2;
    w = 0.25 * s;
    x = (m[2][1] - m[1][2]) / s;
    y = (m[0][2] - m[2][0]) / s;
    z = (m[1][0] - m[0][1]) / s;
  } else if (m[0][0] > m[1][1] && m[0][0] > m[2][2]) {
    const double s = std::sqrt(1.0 + m[0][0] - m[1][1] - m[2][2]) * 2;
    w = (m[2][1] - m[1][2]) / s;
    x = 0.25 * s;
    y = (m[0][1] + m[1][0]) / s;
    z = (m[0][2] + m[2][0]) / s;
  } else if (m[1][1] > m[2][2]) {
    const double s = std::sqrt(1.0 + m[1][1] - m[0][0] - m[2][2]) * 2;
    w = (m[0][2] - m[2][0]) / s;
    x = (m[0][1] + m[1][0]) / s;
    y = 0.25 * s;
    z = (m[1][2] + m[2][1]) / s;
  } else {
    const double s = std::sqrt(1.0 + m[2][2] - m[0][0] - m[1][1]) * 2;
    w = (m[1][0] - m[0][1]) / s;
    x = (m[0][2] + m[2][0]) / s;
    y = (m[1][2] + m[2][1]) / s;
    z = 0.25 * s;
  }
  if (w < 0) {
    w = -w;
    x = -x;
    y = -y;
    z = -z;
  }
  return {w, x, y, z};
}

void Pose::validate() const {
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(t[i])) throw Error(ErrorKind::NonFiniteInput, "pose translation is not finite");
    for (int j = 0; j < 3; ++j)
      if (!std::isfinite(R.m[i][j])) throw Error(ErrorKind::NonFiniteInput, "pose rotation is not finite");
  }
  const Mat3d rtr = transpose(R) * R;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (std::fabs(rtr.m[i][j] - (i == j ? 1.0 : 0.0)) > 1e-9)
        throw Error(ErrorKind::InvalidParameter, "pose rotation is not orthonormal");
  const double det = dot(R.col(0), cross(R.col(1), R.col(2)));
  if (std::fabs(det - 1.0) > 1e-9) throw Error(ErrorKind::InvalidParameter, "pose rotation has det != +1");
}

Pose Pose::inverse() const {
  Pose p;
  p.R = transpose(R);
  p.t = -(p.R * t);
  return p;
}

Pose operator*(const Pose& a, const Pose& b) {
  Pose p;
  p.R = a.R * b.R;
  p.t = a.R * b.t + a.t;
  return p;
}

void HalfSpace::validate() const {
  if (std::fabs(norm(n) - 1.0) > 1e-9) throw Error(ErrorKind::InvalidParameter, "half-space normal must be unit length");
  if (!std::isfinite(h)) throw Error(ErrorKind::NonFiniteInput, "half-space offset is not finite");
}

Superquadric::Superquadric(double e1, double e2, const Vec3d& scale)
    : eps1(std::clamp(e1, kEpsMin, kEpsMax)), eps2(std::clamp(e2, kEpsMin, kEpsMax)), a(scale) {
  if (!std::isfinite(e1) || !std::isfinite(e2)) throw Error(ErrorKind::NonFiniteInput, "superquadric exponent is not finite");
  for (int i = 0; i < 3; ++i)
    if (!std::isfinite(a[i]) || !(a[i] > 0.0))
      throw Error(ErrorKind::InvalidParameter, "superquadric scale must be positive");
}

void PSQ::validate() const {
  if (planes.size() + 1 > static_cast<size_t>(kMaxFanIn))
    throw Error(ErrorKind::Arity, "too many planes (limit " + std::to_string(kMaxFanIn - 1) + ")");
  for (const auto& p : planes) {
    const double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    if (std::fabs(n - 1.0) > 1e-9) throw Error(ErrorKind::InvalidParameter, "plane normal must be unit length");
    if (!std::isfinite(p[3])) throw Error(ErrorKind::NonFiniteInput, "plane offset is not finite");
  }
}

namespace {
void require_finite(const Vec3d& x) {
  if (!std::isfinite(x.x) || !std::isfinite(x.y) || !std::isfinite(x.z))
    throw Error(ErrorKind::NonFiniteInput, "query point is not finite");
}
}  // namespace

Vec3d to_local(const Pose& pose, const Vec3d& x_world) { return to_local(pose.R, pose.t, x_world); }
Vec3d to_world(const Pose& pose, const Vec3d& x_local) { return to_world(pose.R, pose.t, x_local); }

double sq_inside_outside(const Superquadric& sq, const Vec3d& x_local) {
  require_finite(x_local);
  return std::exp(sq_log_f(sq.eps1, sq.eps2, sq.a, x_local));
}

double sq_sdf(const Superquadric& sq, const Vec3d& x_local) {
  require_finite(x_local);
  return sq_sdf_k(sq, x_local);
}

double halfspace_sdf(const HalfSpace& hs, const Vec3d& x_local) {
  hs.validate();
  require_finite(x_local);
  return halfspace_sdf_k(hs.n, hs.h, x_local);
}

double combine_sdf(CombineOp op, const std::vector<double>& phis, const SmoothParams& params) {
  params.validate();
  const int n = static_cast<int>(phis.size());
  if (op == CombineOp::Subtraction ? n != 2 : n < 2)
    throw Error(ErrorKind::Arity, op == CombineOp::Subtraction ? "subtraction takes exactly 2 operands"
                                                               : "union/intersection take at least 2 operands");
  if (n > kMaxFanIn) throw Error(ErrorKind::Arity, "too many operands (limit " + std::to_string(kMaxFanIn) + ")");
  for (double p : phis)
    if (!std::isfinite(p)) throw Error(ErrorKind::NonFiniteInput, "operand is not finite");
  std::vector<double> tmp(phis);
  return combine_k(op, tmp.data(), n, params.tau_min);
}

double psq_sdf(const PSQ& psq, const Vec3d& x_local, const SmoothParams& params) {
  params.validate();
  psq.validate();
  require_finite(x_local);
  return psq_sdf_k(psq, x_local, params.tau_min);
}

}  // namespace contax
