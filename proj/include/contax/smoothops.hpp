#pragma once

#include <vector>

#include "contax/dual.hpp"

namespace contax {

struct SmoothParams {
  double tau_cmp = 1e-3;   // comparison gates
  double tau_min = 1e-2;   // logsumexp / softargmax
  double tau_clip = 1e-3;  // softplus / soft clip

  // Throws InvalidParameter unless every temperature is finite and positive.
  void validate() const;
};

// Maximum operand count of a single logsumexp fold.
inline constexpr int kMaxFanIn = 64;

namespace smooth {

template <class S>
inline S sigmoid(const S& x, const S& a, double tau) {
  return sigmoid_unit((x - a) / tau);
}

template <class S>
inline S softplus(const S& x, double tau) {
  return tau * softplus_unit(x / tau);
}

template <class S>
inline S softclip(const S& x, const S& lo, const S& hi, double tau) {
  return lo + softplus(S(x - lo), tau) - softplus(S(x - hi), tau);
}

// log(e^a + e^b) at unit temperature.
template <class S>
inline S logaddexp(const S& a, const S& b) {
  return a + softplus_unit(b - a);
}

template <class S>
inline base_t<S> hard_max(const S* xs, int n) {
  using B = base_t<S>;
  if (n < 1) __builtin_unreachable();  // callers validate fan-in
  B m = value_of(xs[0]);
  for (int i = 1; i < n; ++i) {
    const B v = value_of(xs[i]);
    m = select(v > m, v, m);
  }
  return m;
}

// tau * log(sum exp(x_i / tau)). The shift is a constant (no partials): the
// expression is shift-invariant, so derivatives stay exact.
template <class S>
inline S lse(const S* xs, int n, double tau) {
  const S m(hard_max(xs, n));
  S sum = exp((xs[0] - m) / tau);
  for (int i = 1; i < n; ++i) sum = sum + exp((xs[i] - m) / tau);
  return m + tau * log(sum);
}

template <class S>
inline void softargmax(const S* xs, int n, double tau, S* out) {
  const S m(hard_max(xs, n));
  S sum(0.0);
  for (int i = 0; i < n; ++i) {
    out[i] = exp((xs[i] - m) / tau);
    sum = sum + out[i];
  }
  const S inv = S(1.0) / sum;
  for (int i = 0; i < n; ++i) out[i] = out[i] * inv;
}

// -lse(-x): smooth minimum.
template <class S>
inline S smin(const S* xs, int n, double tau) {
  S neg[kMaxFanIn];
  for (int i = 0; i < n; ++i) neg[i] = -xs[i];
  return -lse(neg, n, tau);
}

}  // namespace smooth

// Validated double API. Non-finite inputs raise NonFiniteInput.
double sigmoid_cmp(double x, double a, const SmoothParams& params);
double softplus(double x, const SmoothParams& params);
double softclip(double x, double lo, double hi, const SmoothParams& params);
double lse(const std::vector<double>& xs, const SmoothParams& params);
std::vector<double> softargmax(const std::vector<double>& xs, const SmoothParams& params);

}  // namespace contax
