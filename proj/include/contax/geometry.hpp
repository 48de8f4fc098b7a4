#pragma once

#include <array>
#include <vector>

#include "contax/smoothops.hpp"
#include "contax/vec.hpp"

namespace contax {

struct Pose {
  Mat3d R = Mat3d::identity();
  Vec3d t{};

  // (w, x, y, z); normalized on the way in. Zero or non-finite input throws.
  static Pose from_quaternion(double w, double x, double y, double z, const Vec3d& t);
  std::array<double, 4> quaternion() const;

  // Throws InvalidParameter if R is not a rotation to 1e-9.
  void validate() const;
  Pose inverse() const;
  friend Pose operator*(const Pose& a, const Pose& b);  // a after b
};

// A pose whose entries may carry lanes or partials.
template <class S>
struct PoseT {
  Mat3<S> R = Mat3<S>::identity();
  Vec3<S> t{};

  static PoseT lift(const Pose& p) { return {Mat3<S>::lift(p.R), Vec3<S>::lift(p.t)}; }
};

struct HalfSpace {
  Vec3d n{0.0, 0.0, 1.0};
  double h = 0.0;

  void validate() const;
};

struct Superquadric {
  double eps1 = 1.0;
  double eps2 = 1.0;
  Vec3d a{1.0, 1.0, 1.0};

  Superquadric() = default;
  // eps values are clamped to [0.1, 2]; non-positive scales throw.
  Superquadric(double e1, double e2, const Vec3d& scale);
};

inline constexpr double kEpsMin = 0.1;
inline constexpr double kEpsMax = 2.0;

struct PSQ {
  Superquadric sq;
  std::vector<std::array<double, 4>> planes;  // rows [nx, ny, nz, h]

  void validate() const;
};

enum class CombineOp { Union, Intersection, Subtraction };

// Mixed-type helpers: P is the parameter type (double or S), S the query type.
template <class S, class P>
inline Vec3<S> rotate(const Mat3<P>& R, const Vec3<S>& v) {
  return {R.m[0][0] * v.x + R.m[0][1] * v.y + R.m[0][2] * v.z,
          R.m[1][0] * v.x + R.m[1][1] * v.y + R.m[1][2] * v.z,
          R.m[2][0] * v.x + R.m[2][1] * v.y + R.m[2][2] * v.z};
}

template <class S, class P>
inline Vec3<S> rotate_t(const Mat3<P>& R, const Vec3<S>& v) {
  return {R.m[0][0] * v.x + R.m[1][0] * v.y + R.m[2][0] * v.z,
          R.m[0][1] * v.x + R.m[1][1] * v.y + R.m[2][1] * v.z,
          R.m[0][2] * v.x + R.m[1][2] * v.y + R.m[2][2] * v.z};
}

template <class S, class P>
inline Vec3<S> to_local(const Mat3<P>& R, const Vec3<P>& t, const Vec3<S>& x) {
  return rotate_t(R, Vec3<S>(x.x - t.x, x.y - t.y, x.z - t.z));
}

template <class S, class P>
inline Vec3<S> to_world(const Mat3<P>& R, const Vec3<P>& t, const Vec3<S>& x) {
  const Vec3<S> r = rotate(R, x);
  return {r.x + t.x, r.y + t.y, r.z + t.z};
}

template <class S>
inline Vec3<S> to_local(const Pose& p, const Vec3<S>& x) { return to_local(p.R, p.t, x); }
template <class S>
inline Vec3<S> to_world(const Pose& p, const Vec3<S>& x) { return to_world(p.R, p.t, x); }

// Smooth guard inside the even powers: log(u^2 + g^2) stands in for 2 log(|u| + g).
inline constexpr double kPowGuardSq = 1e-24;
inline constexpr double kNormGuardSq = 1e-24;

// log f of the inside-outside function, evaluated without forming f.
template <class S, class P>
inline S sq_log_f(const P& e1, const P& e2, const Vec3<P>& a, const Vec3<S>& x) {
  const S ux = x.x / a.x, uy = x.y / a.y, uz = x.z / a.z;
  const S lx = log(ux * ux + kPowGuardSq) / e2;
  const S ly = log(uy * uy + kPowGuardSq) / e2;
  const S lz = log(uz * uz + kPowGuardSq) / e1;
  return smooth::logaddexp(S(smooth::logaddexp(lx, ly) * (e2 / e1)), lz);
}

template <class S, class P>
inline S sq_sdf_k(const P& e1, const P& e2, const Vec3<P>& a, const Vec3<S>& x) {
  const S logf = sq_log_f(e1, e2, a, x);
  const S r = sqrt(dot(x, x) + kNormGuardSq);
  return r * (1.0 - exp(logf * (e1 * -0.5)));
}

template <class S>
inline S sq_sdf_k(const Superquadric& sq, const Vec3<S>& x) {
  return sq_sdf_k(sq.eps1, sq.eps2, sq.a, x);
}

template <class S, class P>
inline S halfspace_sdf_k(const Vec3<P>& n, const P& h, const Vec3<S>& x) {
  return n.x * x.x + n.y * x.y + n.z * x.z + h;
}

// Plane rows and SQ parameters of type P. planes points at n rows of 4.
template <class S, class P>
inline S psq_sdf_k(const P& e1, const P& e2, const Vec3<P>& a, const std::array<P, 4>* planes, int n,
                   const Vec3<S>& x, double tau_min) {
  const S sq = sq_sdf_k(e1, e2, a, x);
  if (n == 0) return sq;
  S ops[kMaxFanIn];
  ops[0] = sq;
  for (int i = 0; i < n; ++i) {
    const auto& p = planes[i];
    ops[i + 1] = p[0] * x.x + p[1] * x.y + p[2] * x.z + p[3];
  }
  return smooth::lse(ops, n + 1, tau_min);
}

template <class S>
inline S psq_sdf_k(const PSQ& psq, const Vec3<S>& x, double tau_min) {
  return psq_sdf_k(psq.sq.eps1, psq.sq.eps2, psq.sq.a, psq.planes.data(), static_cast<int>(psq.planes.size()), x,
                   tau_min);
}

// Fold n operands; for subtraction n must be 2 (checked by callers).
template <class S>
inline S combine_k(CombineOp op, S* phis, int n, double tau_min) {
  switch (op) {
    case CombineOp::Union:
      return smooth::smin(phis, n, tau_min);
    case CombineOp::Intersection:
      return smooth::lse(phis, n, tau_min);
    case CombineOp::Subtraction:
    default: {
      S ops[2] = {phis[0], -phis[1]};
      return smooth::lse(ops, 2, tau_min);
    }
  }
}

// Validated double API.
Vec3d to_local(const Pose& pose, const Vec3d& x_world);
Vec3d to_world(const Pose& pose, const Vec3d& x_local);
double sq_inside_outside(const Superquadric& sq, const Vec3d& x_local);
double sq_sdf(const Superquadric& sq, const Vec3d& x_local);
double halfspace_sdf(const HalfSpace& hs, const Vec3d& x_local);
double combine_sdf(CombineOp op, const std::vector<double>& phis, const SmoothParams& params);
double psq_sdf(const PSQ& psq, const Vec3d& x_local, const SmoothParams& params);

}  // namespace contax
