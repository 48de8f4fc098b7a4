#pragma once

#include <array>

#include "contax/dual.hpp"

namespace contax {

template <class S>
struct Vec3 {
  S x{}, y{}, z{};

  Vec3() = default;
  Vec3(S x_, S y_, S z_) : x(x_), y(y_), z(z_) {}

  S& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  const S& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  template <class T>
  static Vec3 lift(const Vec3<T>& o) { return Vec3(S(o.x), S(o.y), S(o.z)); }

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend Vec3 operator*(const Vec3& a, const S& s) { return {a.x * s, a.y * s, a.z * s}; }
  friend Vec3 operator*(const S& s, const Vec3& a) { return {a.x * s, a.y * s, a.z * s}; }
  friend Vec3 operator/(const Vec3& a, const S& s) {
    const S inv = S(1.0) / s;
    return {a.x * inv, a.y * inv, a.z * inv};
  }
  Vec3& operator+=(const Vec3& o) { return *this = *this + o; }
  Vec3& operator-=(const Vec3& o) { return *this = *this - o; }
};

using Vec3d = Vec3<double>;

template <class S>
inline S dot(const Vec3<S>& a, const Vec3<S>& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

template <class S>
inline Vec3<S> cross(const Vec3<S>& a, const Vec3<S>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <class S>
inline S norm(const Vec3<S>& a) { return sqrt(dot(a, a)); }

template <class S>
inline Vec3<S> select(mask_t<S> m, const Vec3<S>& a, const Vec3<S>& b) {
  return {select(m, a.x, b.x), select(m, a.y, b.y), select(m, a.z, b.z)};
}

template <class S>
inline Vec3<S> strip(const Vec3<S>& a) { return {strip(a.x), strip(a.y), strip(a.z)}; }

// Row-major 3x3.
template <class S>
struct Mat3 {
  std::array<std::array<S, 3>, 3> m{};

  static Mat3 identity() {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = S(i == j ? 1.0 : 0.0);
    return r;
  }
  static Mat3 from_columns(const Vec3<S>& c0, const Vec3<S>& c1, const Vec3<S>& c2) {
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
      r.m[i][0] = c0[i];
      r.m[i][1] = c1[i];
      r.m[i][2] = c2[i];
    }
    return r;
  }
  template <class T>
  static Mat3 lift(const Mat3<T>& o) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = S(o.m[i][j]);
    return r;
  }

  S& operator()(int i, int j) { return m[i][j]; }
  const S& operator()(int i, int j) const { return m[i][j]; }
  Vec3<S> col(int j) const { return {m[0][j], m[1][j], m[2][j]}; }

  friend Vec3<S> operator*(const Mat3& a, const Vec3<S>& v) {
    return {a.m[0][0] * v.x + a.m[0][1] * v.y + a.m[0][2] * v.z,
            a.m[1][0] * v.x + a.m[1][1] * v.y + a.m[1][2] * v.z,
            a.m[2][0] * v.x + a.m[2][1] * v.y + a.m[2][2] * v.z};
  }
  friend Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j] + a.m[i][2] * b.m[2][j];
    return r;
  }
};

using Mat3d = Mat3<double>;

template <class S>
inline Mat3<S> transpose(const Mat3<S>& a) {
  Mat3<S> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[j][i];
  return r;
}

// R^T v without forming the transpose.
template <class S>
inline Vec3<S> mul_transpose(const Mat3<S>& a, const Vec3<S>& v) {
  return {a.m[0][0] * v.x + a.m[1][0] * v.y + a.m[2][0] * v.z,
          a.m[0][1] * v.x + a.m[1][1] * v.y + a.m[2][1] * v.z,
          a.m[0][2] * v.x + a.m[1][2] * v.y + a.m[2][2] * v.z};
}

template <class S>
inline Mat3<S> skew(const Vec3<S>& v) {
  Mat3<S> r;
  r.m[0][1] = -v.z;
  r.m[0][2] = v.y;
  r.m[1][0] = v.z;
  r.m[1][2] = -v.x;
  r.m[2][0] = -v.y;
  r.m[2][1] = v.x;
  return r;
}

// A point whose three coordinates are the seeded variables of a 3-partial dual.
template <class B>
inline Vec3<Dual<B, 3>> seed_point(const Vec3<B>& p) {
  return {make_variable<B, 3>(p.x, 0), make_variable<B, 3>(p.y, 1), make_variable<B, 3>(p.z, 2)};
}

}  // namespace contax
