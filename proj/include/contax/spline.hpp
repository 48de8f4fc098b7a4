#pragma once

#include <array>

#include "contax/smoothops.hpp"
#include "contax/vec.hpp"

namespace contax {

struct QuadSpline {
  Vec3d p1, p2, p3;

  Vec3d A() const { return p1 - 2.0 * p2 + p3; }
  Vec3d B() const { return 2.0 * (p2 - p1); }
};

// Result of the blended cubic solve. delta is the monic discriminant,
// delta_n the same quantity normalized into [-1, 1] (which gates the blend).
template <class S>
struct CubicSolutionT {
  std::array<S, 3> t;
  S delta;
  S delta_n;
  S w_neg;
  S w_pos;
};

using CubicSolution = CubicSolutionT<double>;

template <class S>
inline Vec3<S> spline_eval_k(const QuadSpline& s, const S& t) {
  const Vec3d A = s.A(), B = s.B();
  return {s.p1.x + (B.x + A.x * t) * t, s.p1.y + (B.y + A.y * t) * t, s.p1.z + (B.z + A.z * t) * t};
}

template <class S>
inline Vec3<S> spline_deriv_k(const QuadSpline& s, const S& t) {
  const Vec3d A = s.A(), B = s.B();
  return {B.x + 2.0 * A.x * t, B.y + 2.0 * A.y * t, B.z + 2.0 * A.z * t};
}

// (c3, c2, c1, c0) of c(t) = (x - p(t)) . p'(t), i.e. -g'(t)/2 for g = |x - p(t)|^2.
template <class S>
inline std::array<S, 4> projection_cubic_k(const QuadSpline& s, const Vec3<S>& x) {
  const Vec3d A = s.A(), B = s.B();
  const Vec3<S> D(x.x - s.p1.x, x.y - s.p1.y, x.z - s.p1.z);
  const S ad = A.x * D.x + A.y * D.y + A.z * D.z;
  const S bd = B.x * D.x + B.y * D.y + B.z * D.z;
  return {S(-2.0 * dot(A, A)), S(-3.0 * dot(A, B)), 2.0 * ad - dot(B, B), bd};
}

namespace cubic_detail {
inline constexpr double kDegenRel = 1e-10;
// Keeps each branch strictly inside its regime so acos/sqrt stay off their
// singular points even when the softplus saturates to zero.
inline constexpr double kBranchFloor = 1e-12;
inline constexpr double kTwoPiOver3 = 2.0943951023931954923;
}  // namespace cubic_detail

template <class S>
inline CubicSolutionT<S> solve_cubic_soft_k(const std::array<S, 4>& c, const SmoothParams& params) {
  using namespace cubic_detail;
  const S& c3 = c[0];
  const S& c2 = c[1];
  const S& c1 = c[2];
  const S& c0 = c[3];

  const S sc = sqrt(c3 * c3 + c2 * c2 + c1 * c1 + c0 * c0) + 1e-100;
  const S eps_d = kDegenRel * sc;
  const S c3s = c3 + sgn_pos(c3) * eps_d;

  const S a = c2 / c3s, b = c1 / c3s, cc = c0 / c3s;
  const S p = b - a * a / 3.0;
  const S q = (2.0 / 27.0) * a * a * a - a * b / 3.0 + cc;
  const S p2 = p * p;
  const S q27 = 27.0 * q * q;
  const S scale_d = 4.0 * p2 * sqrt(p2 + 1e-300) + q27 + 1e-300;
  const S delta = -(4.0 * p2 * p + q27);
  const S dn = delta / scale_d;

  // one real root
  const S dn_neg = -(smooth::softplus(S(-dn), params.tau_clip) + kBranchFloor);
  const S d_neg = dn_neg * scale_d;
  const S p_neg = cbrt((-d_neg - q27) / 4.0);
  const S Q = -d_neg / 108.0;
  const S u = -cbrt(q / 2.0 + sgn_pos(q) * sqrt(Q));
  const auto u_zero = value_of(u) == base_t<S>(0.0);
  const S u_safe = select(u_zero, S(1.0), u);
  const S y_neg = select(u_zero, S(0.0), S(u - p_neg / (3.0 * u_safe)));

  // three real roots
  const S dn_pos = smooth::softplus(dn, params.tau_clip) + kBranchFloor;
  const S d_pos = dn_pos * scale_d;
  const S p_pos = -cbrt((d_pos + q27) / 4.0);
  const S r = sqrt(-p_pos / 3.0);
  const S arg = -q / (2.0 * r * r * r + 1e-300);
  const S theta3 = acos(arg) / 3.0;

  const S shift = a / 3.0;
  const S lo(0.0), hi(1.0);
  const S t_neg = smooth::softclip(S(y_neg - shift), lo, hi, params.tau_clip);

  const S w_pos = smooth::sigmoid(dn, S(0.0), params.tau_cmp);
  const S w_neg = 1.0 - w_pos;

  // degenerate leading coefficient: hand over to the linear root
  const S g3 = c3 * c3 / (c3 * c3 + eps_d * eps_d);
  const S c1s = c1 + sgn_pos(c1) * eps_d;
  const S t_lin = smooth::softclip(S(-c0 / c1s), lo, hi, params.tau_clip);

  CubicSolutionT<S> out;
  for (int k = 0; k < 3; ++k) {
    const S yk = 2.0 * r * cos(theta3 - kTwoPiOver3 * k);
    const S tk = smooth::softclip(S(yk - shift), lo, hi, params.tau_clip);
    const S blended = w_neg * t_neg + w_pos * tk;
    out.t[k] = g3 * blended + (1.0 - g3) * t_lin;
  }
  out.delta = delta;
  out.delta_n = dn;
  out.w_neg = w_neg;
  out.w_pos = w_pos;
  return out;
}

template <class S>
inline CubicSolutionT<S> project_point_k(const QuadSpline& s, const Vec3<S>& x, const SmoothParams& params) {
  return solve_cubic_soft_k(projection_cubic_k(s, x), params);
}

// Unit vector perpendicular to up, used to keep the tangent defined.
Vec3d perpendicular_axis(const Vec3d& up);

template <class S>
inline Mat3<S> moving_frame_k(const QuadSpline& s, const Vec3d& up, const S& t) {
  const Vec3d A = s.A();
  const Vec3d fb = perpendicular_axis(up);
  const Vec3<S> d = spline_deriv_k(s, t);
  const Vec3<S> d_g(d.x + 1e-12 * fb.x, d.y + 1e-12 * fb.y, d.z + 1e-12 * fb.z);
  const Vec3<S> T = d_g / norm(d_g);

  const Vec3<S> Av = Vec3<S>::lift(A);
  const Vec3<S> axd = cross(Av, d_g);
  const S dd = dot(d_g, d_g);
  const S c2 = dot(axd, axd) / (dd * dd);
  const S g = c2 / (c2 + 1e-6);
  const double an = norm(A);
  const Vec3d A_hat = an > 0.0 ? A / an : Vec3d{};
  const Vec3<S> r(g * A_hat.x + (1.0 - g) * up.x, g * A_hat.y + (1.0 - g) * up.y, g * A_hat.z + (1.0 - g) * up.z);

  Vec3<S> Z = r - T * dot(r, T);
  S zz = dot(Z, Z);
  // r parallel to T: fall back to the coordinate axis most orthogonal to T
  for (int k = 0; k < 3; ++k) {
    Vec3<S> e;
    e[k] = S(1.0);
    const Vec3<S> Ze = e - T * T[k];
    const S ze = dot(Ze, Ze);
    const auto take = (value_of(zz) < base_t<S>(1e-12)) & (value_of(ze) > value_of(zz));
    Z = select(take, Ze, Z);
    zz = select(take, ze, zz);
  }
  Z = Z / sqrt(zz);
  const Vec3<S> Y = cross(Z, T);
  return Mat3<S>::from_columns(T, Y, Z);
}

// Validated double API.
Vec3d spline_eval(const QuadSpline& s, double t, Vec3d* derivative = nullptr);
std::array<double, 4> projection_cubic(const QuadSpline& s, const Vec3d& x);
CubicSolution solve_cubic_soft(const std::array<double, 4>& coeffs, const SmoothParams& params);
CubicSolution project_point(const QuadSpline& s, const Vec3d& x, const SmoothParams& params);
Mat3d moving_frame(const QuadSpline& s, double t, const Vec3d& up_hint);

}  // namespace contax
