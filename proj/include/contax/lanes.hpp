#pragma once

// Fixed-width packs of doubles for batch kernels. Each lane holds one batch
// item; every operation is lane-wise and branch-free, so a lane's result never
// depends on the pack width or on the other lanes. The transcendental
// functions are implemented here (not taken from libm) for the same reason:
// Lanes<1> and Lanes<8> execute the same IEEE operations and agree bitwise.

#include <cstdint>
#include <limits>

namespace contax {

namespace lanes_detail {
template <int W> struct VecTypes;
#define CONTAX_LANE_TYPES(N)                                                   \
  template <> struct VecTypes<N> {                                             \
    typedef double vec __attribute__((vector_size(N * sizeof(double))));       \
    typedef std::int64_t ivec __attribute__((vector_size(N * sizeof(double)))); \
  };
CONTAX_LANE_TYPES(1)
CONTAX_LANE_TYPES(2)
CONTAX_LANE_TYPES(4)
CONTAX_LANE_TYPES(8)
#undef CONTAX_LANE_TYPES
}  // namespace lanes_detail

template <int W>
struct LaneMask {
  using ivec = typename lanes_detail::VecTypes<W>::ivec;
  ivec m;

  LaneMask() : m(ivec{}) {}
  explicit LaneMask(ivec x) : m(x) {}
  explicit LaneMask(bool b) : m(ivec{} + (b ? std::int64_t{-1} : std::int64_t{0})) {}

  bool lane(int i) const { return m[i] != 0; }

  friend LaneMask operator&(LaneMask a, LaneMask b) { return LaneMask(a.m & b.m); }
  friend LaneMask operator|(LaneMask a, LaneMask b) { return LaneMask(a.m | b.m); }
  friend LaneMask operator!(LaneMask a) { return LaneMask(~a.m); }
};

template <int W>
struct Lanes {
  static_assert(W == 1 || W == 2 || W == 4 || W == 8, "unsupported lane width");
  static constexpr int width = W;
  using vec = typename lanes_detail::VecTypes<W>::vec;
  using ivec = typename lanes_detail::VecTypes<W>::ivec;

  vec v;

  Lanes() : v(vec{}) {}
  Lanes(double s) : v(vec{} + s) {}  // NOLINT: broadcast is the common case
  explicit Lanes(vec x) : v(x) {}

  double operator[](int i) const { return v[i]; }
  void set(int i, double x) { v[i] = x; }

  Lanes& operator+=(Lanes o) { v += o.v; return *this; }
  Lanes& operator-=(Lanes o) { v -= o.v; return *this; }
  Lanes& operator*=(Lanes o) { v *= o.v; return *this; }
  Lanes& operator/=(Lanes o) { v /= o.v; return *this; }

  friend Lanes operator+(Lanes a, Lanes b) { return Lanes(a.v + b.v); }
  friend Lanes operator-(Lanes a, Lanes b) { return Lanes(a.v - b.v); }
  friend Lanes operator*(Lanes a, Lanes b) { return Lanes(a.v * b.v); }
  friend Lanes operator/(Lanes a, Lanes b) { return Lanes(a.v / b.v); }
  friend Lanes operator-(Lanes a) { return Lanes(-a.v); }

  friend Lanes operator+(Lanes a, double b) { return Lanes(a.v + b); }
  friend Lanes operator-(Lanes a, double b) { return Lanes(a.v - b); }
  friend Lanes operator*(Lanes a, double b) { return Lanes(a.v * b); }
  friend Lanes operator/(Lanes a, double b) { return Lanes(a.v / b); }
  friend Lanes operator+(double a, Lanes b) { return Lanes(a + b.v); }
  friend Lanes operator-(double a, Lanes b) { return Lanes(a - b.v); }
  friend Lanes operator*(double a, Lanes b) { return Lanes(a * b.v); }
  friend Lanes operator/(double a, Lanes b) { return Lanes(a / b.v); }

  friend LaneMask<W> operator<(Lanes a, Lanes b) { return LaneMask<W>(a.v < b.v); }
  friend LaneMask<W> operator>(Lanes a, Lanes b) { return LaneMask<W>(a.v > b.v); }
  friend LaneMask<W> operator<=(Lanes a, Lanes b) { return LaneMask<W>(a.v <= b.v); }
  friend LaneMask<W> operator>=(Lanes a, Lanes b) { return LaneMask<W>(a.v >= b.v); }
  friend LaneMask<W> operator==(Lanes a, Lanes b) { return LaneMask<W>(a.v == b.v); }
};

template <int W>
inline Lanes<W> select(LaneMask<W> m, Lanes<W> a, Lanes<W> b) {
  return Lanes<W>(m.m ? a.v : b.v);
}

template <int W>
inline bool any(LaneMask<W> m) {
  for (int i = 0; i < W; ++i)
    if (m.m[i]) return true;
  return false;
}

template <int W>
inline bool all(LaneMask<W> m) {
  for (int i = 0; i < W; ++i)
    if (!m.m[i]) return false;
  return true;
}

namespace lanes_detail {

template <int W> using V = typename Lanes<W>::vec;
template <int W> using I = typename Lanes<W>::ivec;

inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kLog2e = 1.44269504088896338700e+00;
inline constexpr double kPio2Hi = 1.57079632673412561417e+00;
inline constexpr double kPio2Lo = 6.07710050650619224932e-11;
inline constexpr double kTwoOverPi = 6.36619772367581382433e-01;
inline constexpr double kPi = 3.14159265358979311600e+00;
inline constexpr double kPio2 = 1.57079632679489655800e+00;
inline constexpr double kPio4 = 7.85398163397448278999e-01;
inline constexpr double kRoundMagic = 0x1.8p52;

template <int W>
inline V<W> vabs(V<W> x) {
  return (V<W>)((I<W>)x & (I<W>{} + std::int64_t{0x7fffffffffffffff}));
}

template <int W>
inline V<W> vsqrt(V<W> x) {
  V<W> r;
  for (int i = 0; i < W; ++i) r[i] = __builtin_sqrt(x[i]);
  return r;
}

// 1/k! for k = 0..18
inline constexpr double kInvFact[19] = {
    1.0,
    1.0,
    1.0 / 2.0,
    1.0 / 6.0,
    1.0 / 24.0,
    1.0 / 120.0,
    1.0 / 720.0,
    1.0 / 5040.0,
    1.0 / 40320.0,
    1.0 / 362880.0,
    1.0 / 3628800.0,
    1.0 / 39916800.0,
    1.0 / 479001600.0,
    1.0 / 6227020800.0,
    1.0 / 87178291200.0,
    1.0 / 1307674368000.0,
    1.0 / 20922789888000.0,
    1.0 / 355687428096000.0,
    1.0 / 6402373705728000.0,
};

template <int W>
inline V<W> vexp(V<W> x) {
  x = (x < -746.0) ? V<W>{} - 746.0 : x;
  x = (x > 710.0) ? V<W>{} + 710.0 : x;
  const V<W> kd = x * kLog2e + kRoundMagic;
  const V<W> n = kd - kRoundMagic;
  const V<W> r = (x - n * kLn2Hi) - n * kLn2Lo;
  V<W> p = V<W>{} + kInvFact[13];
  for (int k = 12; k >= 0; --k) p = p * r + kInvFact[k];
  const I<W> ni = __builtin_convertvector(n, I<W>);
  const I<W> n1 = ni >> 1;
  const I<W> n2 = ni - n1;
  const V<W> s1 = (V<W>)((n1 + 1023) << 52);
  const V<W> s2 = (V<W>)((n2 + 1023) << 52);
  return (p * s1) * s2;
}

template <int W>
inline V<W> vlog(V<W> x) {
  const I<W> tiny = x < 0x1p-1022;
  const V<W> xs = tiny ? x * 0x1p54 : x;
  const I<W> ix = (I<W>)xs;
  I<W> e = ((ix >> 52) & 0x7ff) - 1023;
  e = tiny ? e - 54 : e;
  V<W> m = (V<W>)((ix & 0x000fffffffffffffLL) | 0x3ff0000000000000LL);
  const I<W> big = m > 1.41421356237309504880;
  m = big ? m * 0.5 : m;
  e = big ? e + 1 : e;
  const V<W> s = (m - 1.0) / (m + 1.0);
  const V<W> s2 = s * s;
  V<W> poly = V<W>{} + 2.0 / 23.0;
  for (int k = 21; k >= 1; k -= 2) poly = poly * s2 + 2.0 / k;
  const V<W> ed = __builtin_convertvector(e, V<W>);
  V<W> res = ed * kLn2Hi + (ed * kLn2Lo + s * poly);
  const double inf = std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  res = (x == 0.0) ? V<W>{} - inf : res;
  res = (x < 0.0) ? V<W>{} + nan : res;
  res = (x == inf) ? V<W>{} + inf : res;
  res = (x != x) ? x : res;
  return res;
}

// atan for t >= 0 (including +inf)
template <int W>
inline V<W> vatan_pos(V<W> t) {
  const I<W> inv = t > 1.0;
  const V<W> t1 = inv ? 1.0 / t : t;
  const I<W> red = t1 > 0.41421356237309503;
  const V<W> t2 = red ? (t1 - 1.0) / (t1 + 1.0) : t1;
  const V<W> t3 = t2 / (1.0 + vsqrt<W>(1.0 + t2 * t2));
  const V<W> z = t3 * t3;
  V<W> poly = V<W>{} - 1.0 / 23.0;
  double sign = 1.0;
  for (int k = 21; k >= 1; k -= 2) {
    poly = poly * z + sign / k;
    sign = -sign;
  }
  V<W> r = 2.0 * (t3 * poly);
  r = red ? r + kPio4 : r;
  r = inv ? kPio2 - r : r;
  return r;
}

template <int W>
inline V<W> vacos(V<W> x) {
  return 2.0 * vatan_pos<W>(vsqrt<W>((1.0 - x) / (1.0 + x)));
}

template <int W>
inline void vsincos(V<W> x, V<W>& s_out, V<W>& c_out) {
  const V<W> kd = x * kTwoOverPi + kRoundMagic;
  const V<W> n = kd - kRoundMagic;
  const V<W> y = (x - n * kPio2Hi) - n * kPio2Lo;
  const V<W> y2 = y * y;
  V<W> s = V<W>{} + kInvFact[17];
  for (int k = 15; k >= 1; k -= 2) s = s * y2 + ((k / 2) % 2 ? -kInvFact[k] : kInvFact[k]);
  s = s * y;
  V<W> c = V<W>{} - kInvFact[18];
  for (int k = 16; k >= 0; k -= 2) c = c * y2 + ((k / 2) % 2 ? -kInvFact[k] : kInvFact[k]);
  const I<W> q = __builtin_convertvector(n, I<W>) & 3;
  s_out = (q == 0) ? s : (q == 1) ? c : (q == 2) ? -s : -c;
  c_out = (q == 0) ? c : (q == 1) ? -s : (q == 2) ? -c : s;
}

}  // namespace lanes_detail

template <int W>
inline Lanes<W> exp(Lanes<W> x) { return Lanes<W>(lanes_detail::vexp<W>(x.v)); }

template <int W>
inline Lanes<W> log(Lanes<W> x) { return Lanes<W>(lanes_detail::vlog<W>(x.v)); }

template <int W>
inline Lanes<W> sqrt(Lanes<W> x) { return Lanes<W>(lanes_detail::vsqrt<W>(x.v)); }

template <int W>
inline Lanes<W> log1p(Lanes<W> u) {
  using V = typename Lanes<W>::vec;
  const V w = 1.0 + u.v;
  const V den = w - 1.0;
  const V lw = lanes_detail::vlog<W>(w);
  return Lanes<W>((den == 0.0) ? u.v : lw * (u.v / den));
}

// Real (signed) cube root.
template <int W>
inline Lanes<W> cbrt(Lanes<W> x) {
  using V = typename Lanes<W>::vec;
  const V ax = lanes_detail::vabs<W>(x.v);
  V r = lanes_detail::vexp<W>(lanes_detail::vlog<W>(ax) * (1.0 / 3.0));
  r = (2.0 * r + ax / (r * r)) * (1.0 / 3.0);
  r = (ax == 0.0) ? V{} : r;
  r = (ax == std::numeric_limits<double>::infinity()) ? ax : r;
  return Lanes<W>((x.v < 0.0) ? -r : r);
}

template <int W>
inline Lanes<W> acos(Lanes<W> x) { return Lanes<W>(lanes_detail::vacos<W>(x.v)); }

template <int W>
inline Lanes<W> cos(Lanes<W> x) {
  typename Lanes<W>::vec s, c;
  lanes_detail::vsincos<W>(x.v, s, c);
  return Lanes<W>(c);
}

template <int W>
inline Lanes<W> sin(Lanes<W> x) {
  typename Lanes<W>::vec s, c;
  lanes_detail::vsincos<W>(x.v, s, c);
  return Lanes<W>(s);
}

}  // namespace contax
