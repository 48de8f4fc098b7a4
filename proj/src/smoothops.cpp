#include "contax/smoothops.hpp"

#include <cmath>
#include <string>

#include "contax/error.hpp"
#include "contax/log.hpp"

namespace contax {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw Error(ErrorKind::NonFiniteInput, std::string(what) + " is not finite");
}

void require_nonempty(const std::vector<double>& xs) {
  if (xs.empty()) throw Error(ErrorKind::EmptyInput, "empty input vector");
  for (double x : xs) require_finite(x, "vector element");
}

}  // namespace

void SmoothParams::validate() const {
  auto check = [](double t, const char* name) {
    if (!std::isfinite(t) || !(t > 0.0))
      throw Error(ErrorKind::InvalidParameter, std::string("smoothing.") + name + " must be a positive finite number");
  };
  check(tau_cmp, "tau_cmp");
  check(tau_min, "tau_min");
  check(tau_clip, "tau_clip");
}

double sigmoid_cmp(double x, double a, const SmoothParams& params) {
  params.validate();
  require_finite(x, "x");
  require_finite(a, "a");
  return smooth::sigmoid(x, a, params.tau_cmp);
}

double softplus(double x, const SmoothParams& params) {
  params.validate();
  require_finite(x, "x");
  return smooth::softplus(x, params.tau_clip);
}

double softclip(double x, double lo, double hi, const SmoothParams& params) {
  params.validate();
  require_finite(x, "x");
  require_finite(lo, "lo");
  require_finite(hi, "hi");
  if (!(lo < hi)) throw Error(ErrorKind::InvalidInterval, "softclip requires lo < hi");
  if (hi - lo < 10.0 * params.tau_clip)
    log_warning("softclip interval width " + std::to_string(hi - lo) + " is not much larger than tau_clip");
  return smooth::softclip(x, lo, hi, params.tau_clip);
}

double lse(const std::vector<double>& xs, const SmoothParams& params) {
  params.validate();
  require_nonempty(xs);
  double m = xs[0];
  for (double x : xs) m = x > m ? x : m;
  double sum = 0.0;
  for (double x : xs) sum += std::exp((x - m) / params.tau_min);
  return m + params.tau_min * std::log(sum);
}

std::vector<double> softargmax(const std::vector<double>& xs, const SmoothParams& params) {
  params.validate();
  require_nonempty(xs);
  double m = xs[0];
  for (double x : xs) m = x > m ? x : m;
  std::vector<double> w(xs.size());
  double sum = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    w[i] = std::exp((xs[i] - m) / params.tau_min);
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return w;
}

}  // namespace contax
