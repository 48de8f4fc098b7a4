#include "contax/spline.hpp"

#include <cmath>

#include "contax/error.hpp"

namespace contax {

namespace {

void require_finite(const Vec3d& v, const char* what) {
  if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
    throw Error(ErrorKind::NonFiniteInput, std::string(what) + " is not finite");
}

void require_finite(const QuadSpline& s) {
  require_finite(s.p1, "spline control point");
  require_finite(s.p2, "spline control point");
  require_finite(s.p3, "spline control point");
}

}  // namespace

Vec3d perpendicular_axis(const Vec3d& up) {
  const double ax = std::fabs(up.x), ay = std::fabs(up.y), az = std::fabs(up.z);
  Vec3d e{0.0, 0.0, 0.0};
  if (ax <= ay && ax <= az)
    e.x = 1.0;
  else if (ay <= az)
    e.y = 1.0;
  else
    e.z = 1.0;
  const Vec3d r = e - up * dot(e, up);
  return r / norm(r);
}

Vec3d spline_eval(const QuadSpline& s, double t, Vec3d* derivative) {
  require_finite(s);
  if (derivative) *derivative = spline_deriv_k(s, t);
  return spline_eval_k(s, t);
}

std::array<double, 4> projection_cubic(const QuadSpline& s, const Vec3d& x) {
  require_finite(s);
  require_finite(x, "query point");
  return projection_cubic_k(s, x);
}

CubicSolution solve_cubic_soft(const std::array<double, 4>& coeffs, const SmoothParams& params) {
  params.validate();
  for (double c : coeffs)
    if (!std::isfinite(c)) throw Error(ErrorKind::NonFiniteInput, "cubic coefficient is not finite");
  return solve_cubic_soft_k(coeffs, params);
}

CubicSolution project_point(const QuadSpline& s, const Vec3d& x, const SmoothParams& params) {
  return solve_cubic_soft(projection_cubic(s, x), params);
}

Mat3d moving_frame(const QuadSpline& s, double t, const Vec3d& up_hint) {
  require_finite(s);
  if (std::fabs(norm(up_hint) - 1.0) > 1e-9) throw Error(ErrorKind::InvalidParameter, "up hint must be unit length");
  return moving_frame_k(s, up_hint, t);
}

}  // namespace contax
