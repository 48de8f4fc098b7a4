#pragma once

// Forward-mode dual numbers. Dual<V, N> carries a value of type V and N
// partials of type V; V may itself be a Dual, which gives higher derivatives.
// Only the primitives of scalar.hpp are lifted, so a kernel that uses a hard
// operation (abs, floor, min, max, ...) fails to compile for Dual.

#include <array>
#include <type_traits>
#include <utility>

#include "contax/scalar.hpp"

namespace contax {

template <class V, int N>
struct Dual;

template <class T> struct is_dual : std::false_type {};
template <class V, int N> struct is_dual<Dual<V, N>> : std::true_type {};

template <class S> struct scalar_base { using type = S; };
template <class V, int N> struct scalar_base<Dual<V, N>> { using type = typename scalar_base<V>::type; };
template <class S> using base_t = typename scalar_base<S>::type;
template <class S> using mask_t = decltype(std::declval<base_t<S>>() < std::declval<base_t<S>>());

template <class V, int N>
struct Dual {
  using value_type = V;
  static constexpr int size = N;

  V v{};
  std::array<V, N> d{};

  Dual() = default;
  Dual(const V& x) : v(x) {}  // NOLINT
  template <class T>
    requires(std::is_arithmetic_v<T> && !std::is_same_v<V, T>)
  Dual(T x) : v(V(static_cast<double>(x))) {}  // NOLINT

  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }

  friend Dual operator-(const Dual& a) {
    Dual r;
    r.v = -a.v;
    for (int i = 0; i < N; ++i) r.d[i] = -a.d[i];
    return r;
  }

  friend Dual operator+(const Dual& a, const Dual& b) {
    Dual r;
    r.v = a.v + b.v;
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
    return r;
  }
  friend Dual operator-(const Dual& a, const Dual& b) {
    Dual r;
    r.v = a.v - b.v;
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] - b.d[i];
    return r;
  }
  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual r;
    r.v = a.v * b.v;
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    return r;
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    Dual r;
    const V inv = V(1.0) / b.v;
    r.v = a.v * inv;
    for (int i = 0; i < N; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) * inv;
    return r;
  }

  friend Dual operator+(const Dual& a, const V& b) {
    Dual r = a;
    r.v = a.v + b;
    return r;
  }
  friend Dual operator+(const V& a, const Dual& b) { return b + a; }
  friend Dual operator-(const Dual& a, const V& b) {
    Dual r = a;
    r.v = a.v - b;
    return r;
  }
  friend Dual operator-(const V& a, const Dual& b) {
    Dual r = -b;
    r.v = a - b.v;
    return r;
  }
  friend Dual operator*(const Dual& a, const V& b) {
    Dual r;
    r.v = a.v * b;
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b;
    return r;
  }
  friend Dual operator*(const V& a, const Dual& b) { return b * a; }
  friend Dual operator/(const Dual& a, const V& b) {
    Dual r;
    const V inv = V(1.0) / b;
    r.v = a.v * inv;
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * inv;
    return r;
  }
  friend Dual operator/(const V& a, const Dual& b) { return Dual(a) / b; }

  template <class T> requires std::is_arithmetic_v<T>
  friend Dual operator+(const Dual& a, T b) { return a + V(static_cast<double>(b)); }
  template <class T> requires std::is_arithmetic_v<T>
  friend Dual operator+(T a, const Dual& b) { return b + V(static_cast<double>(a)); }
  template <class T> requires std::is_arithmetic_v<T>
  friend Dual operator-(const Dual& a, T b) { return a - V(static_cast<double>(b)); }
  template <class T> requires std::is_arithmetic_v<T>
  friend Dual operator-(T a, const Dual& b) { return V(static_cast<double>(a)) - b; }
  template <class T> requires std::is_arithmetic_v<T>
  friend Dual operator*(const Dual& a, T b) { return a * V(static_cast<double>(b)); }
  template <class T> requires std::is_arithmetic_v<T>
  friend Dual operator*(T a, const Dual& b) { return b * V(static_cast<double>(a)); }
  template <class T> requires std::is_arithmetic_v<T>
  friend Dual operator/(const Dual& a, T b) { return a / V(static_cast<double>(b)); }
  template <class T> requires std::is_arithmetic_v<T>
  friend Dual operator/(T a, const Dual& b) { return V(static_cast<double>(a)) / b; }

  // Comparisons act on the underlying value and yield a base mask.
  friend auto operator<(const Dual& a, const Dual& b) { return value_of(a) < value_of(b); }
  friend auto operator>(const Dual& a, const Dual& b) { return value_of(a) > value_of(b); }
  friend auto operator<=(const Dual& a, const Dual& b) { return value_of(a) <= value_of(b); }
  friend auto operator>=(const Dual& a, const Dual& b) { return value_of(a) >= value_of(b); }
  friend auto operator==(const Dual& a, const Dual& b) { return value_of(a) == value_of(b); }
};

template <class V, int N>
inline base_t<V> value_of(const Dual<V, N>& x) { return value_of(x.v); }

// The same quantity with every partial dropped.
template <class S>
inline S strip(const S& x) { return S(value_of(x)); }

template <class V, int N>
inline Dual<V, N> select(mask_t<V> m, const Dual<V, N>& a, const Dual<V, N>& b) {
  Dual<V, N> r;
  r.v = select(m, a.v, b.v);
  for (int i = 0; i < N; ++i) r.d[i] = select(m, a.d[i], b.d[i]);
  return r;
}

namespace dual_detail {
template <class V, int N>
inline Dual<V, N> chain(const Dual<V, N>& x, const V& f, const V& fp) {
  Dual<V, N> r;
  r.v = f;
  for (int i = 0; i < N; ++i) r.d[i] = x.d[i] * fp;
  return r;
}
}  // namespace dual_detail

template <class V, int N>
inline Dual<V, N> exp(const Dual<V, N>& x) {
  const V e = exp(x.v);
  return dual_detail::chain(x, e, e);
}

template <class V, int N>
inline Dual<V, N> log(const Dual<V, N>& x) {
  return dual_detail::chain(x, log(x.v), V(1.0) / x.v);
}

template <class V, int N>
inline Dual<V, N> log1p(const Dual<V, N>& x) {
  return dual_detail::chain(x, log1p(x.v), V(1.0) / (V(1.0) + x.v));
}

template <class V, int N>
inline Dual<V, N> sqrt(const Dual<V, N>& x) {
  const V s = sqrt(x.v);
  return dual_detail::chain(x, s, V(0.5) / s);
}

template <class V, int N>
inline Dual<V, N> cbrt(const Dual<V, N>& x) {
  const V r = cbrt(x.v);
  const V fp = select(value_of(r) == base_t<V>(0.0), V(0.0), V(1.0) / (V(3.0) * r * r));
  return dual_detail::chain(x, r, fp);
}

template <class V, int N>
inline Dual<V, N> acos(const Dual<V, N>& x) {
  return dual_detail::chain(x, acos(x.v), V(-1.0) / sqrt(V(1.0) - x.v * x.v));
}

template <class V, int N>
inline Dual<V, N> cos(const Dual<V, N>& x) {
  return dual_detail::chain(x, cos(x.v), -sin(x.v));
}

template <class V, int N>
inline Dual<V, N> sin(const Dual<V, N>& x) {
  return dual_detail::chain(x, sin(x.v), cos(x.v));
}

template <class V, int N>
inline Dual<V, N> sigmoid_unit(const Dual<V, N>& x) {
  const V s = sigmoid_unit(x.v);
  return dual_detail::chain(x, s, s * (V(1.0) - s));
}

template <class V, int N>
inline Dual<V, N> softplus_unit(const Dual<V, N>& x) {
  return dual_detail::chain(x, softplus_unit(x.v), sigmoid_unit(x.v));
}

template <class V, int N>
inline Dual<V, N> sgn_pos(const Dual<V, N>& x) {
  return Dual<V, N>(sgn_pos(x.v));
}

// Seed the i-th partial of a fresh variable.
template <class V, int N>
inline Dual<V, N> make_variable(const V& value, int i) {
  Dual<V, N> r(value);
  r.d[i] = V(1.0);
  return r;
}

}  // namespace contax
