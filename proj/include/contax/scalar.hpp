#pragma once

// Primitive set shared by every kernel instantiation. A kernel is written once
// against a scalar type S and instantiated for double (reference path),
// Lanes<W> (batch path) and Dual<...> of either (derivatives). Only the
// functions below are available to kernels; there is deliberately no abs,
// floor, min or max.

#include <cmath>
#include <type_traits>

#include "contax/lanes.hpp"

namespace contax {

inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }
inline double log1p(double x) { return std::log1p(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double cbrt(double x) { return std::cbrt(x); }
inline double acos(double x) { return std::acos(x); }
inline double cos(double x) { return std::cos(x); }
inline double sin(double x) { return std::sin(x); }

inline double select(bool m, double a, double b) { return m ? a : b; }
inline bool any(bool m) { return m; }
inline bool all(bool m) { return m; }

template <class T> struct is_lanes : std::false_type {};
template <int W> struct is_lanes<Lanes<W>> : std::true_type {};

template <class T>
concept BaseScalar = std::is_same_v<T, double> || is_lanes<T>::value;

template <BaseScalar B>
inline B value_of(B x) { return x; }

// Base-type forms of the unit sigmoid and softplus. Both are evaluated so
// that no intermediate overflows.
template <BaseScalar B>
inline B sigmoid_unit(B x) {
  return B(1.0) / (B(1.0) + exp(-x));
}

template <BaseScalar B>
inline B softplus_unit(B x) {
  const auto neg = x < B(0.0);
  const B ax = select(neg, -x, x);
  const B pos = select(neg, B(0.0), x);
  return pos + log1p(exp(-ax));
}

// Sign with sgn(0) = +1; carries no derivative.
template <BaseScalar B>
inline B sgn_pos(B x) {
  return select(x < B(0.0), B(-1.0), B(1.0));
}

}  // namespace contax
