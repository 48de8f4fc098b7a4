#include <cmath>
#include <cstring>
#include <random>

#include "contax/dual.hpp"
#include "contax/lanes.hpp"
#include "contax/tree.hpp"
#include "contax/vec.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace contax;

namespace {

double ulps(double got, double want) {
  if (got == want) return 0.0;
  const double gap = std::fabs(std::nextafter(want, INFINITY) - want);
  return std::fabs(got - want) / gap;
}

template <class T>
bool same_bits(T a, T b) {
  return std::memcmp(&a, &b, sizeof(T)) == 0;
}

// Hard (non-smooth) operations are deliberately absent for dual numbers.
template <class T>
concept HasAbs = requires(T x) { abs(x); };
template <class T>
concept HasFloor = requires(T x) { floor(x); };
template <class T>
concept HasMin = requires(T x) { min(x, x); };
template <class T>
concept HasMax = requires(T x) { max(x, x); };

}  // namespace

static_assert(!HasAbs<Dual<double, 3>>);
static_assert(!HasFloor<Dual<double, 3>>);
static_assert(!HasMin<Dual<double, 3>>);
static_assert(!HasMax<Dual<double, 3>>);
static_assert(!HasAbs<Dual<Lanes<8>, 3>>);

TEST_CASE("lane math agrees with the C library") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> big(-700, 700), e10(-300, 300), unit(-1, 1), ang(-50, 50);
  double m_exp = 0, m_log = 0, m_log1p = 0, m_cbrt = 0, m_acos = 0, m_sin = 0, m_cos = 0, m_sqrt = 0;
  for (int it = 0; it < 50000; ++it) {
    const double x = big(rng), p = std::pow(10.0, e10(rng)), c = unit(rng), a = ang(rng), s = 0.9 * unit(rng);
    m_exp = std::max(m_exp, ulps(exp(Lanes<8>(x))[3], std::exp(x)));
    m_log = std::max(m_log, ulps(log(Lanes<8>(p))[3], std::log(p)));
    m_log1p = std::max(m_log1p, ulps(log1p(Lanes<8>(s))[3], std::log1p(s)));
    m_cbrt = std::max(m_cbrt, ulps(cbrt(Lanes<8>(x))[3], std::cbrt(x)));
    m_acos = std::max(m_acos, ulps(acos(Lanes<8>(c))[3], std::acos(c)));
    m_sin = std::max(m_sin, std::fabs(sin(Lanes<8>(a))[3] - std::sin(a)));
    m_cos = std::max(m_cos, std::fabs(cos(Lanes<8>(a))[3] - std::cos(a)));
    m_sqrt = std::max(m_sqrt, ulps(sqrt(Lanes<8>(p))[3], std::sqrt(p)));
  }
  CHECK(m_exp <= 2);
  CHECK(m_log <= 3);
  CHECK(m_log1p <= 6);
  CHECK(m_cbrt <= 6);
  CHECK(m_acos <= 6);
  CHECK(m_sin <= 4e-16);
  CHECK(m_cos <= 4e-16);
  CHECK(m_sqrt == 0);
}

TEST_CASE("lane math edge values") {
  CHECK(exp(Lanes<1>(-800.0))[0] == 0.0);
  CHECK(std::isinf(exp(Lanes<1>(800.0))[0]));
  CHECK(exp(Lanes<1>(0.0))[0] == 1.0);
  CHECK(log(Lanes<1>(1.0))[0] == 0.0);
  CHECK(std::isinf(log(Lanes<1>(0.0))[0]));
  CHECK(ulps(log(Lanes<1>(4e-320))[0], std::log(4e-320)) <= 3);
  CHECK(acos(Lanes<1>(1.0))[0] == 0.0);
  CHECK(acos(Lanes<1>(-1.0))[0] == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(cbrt(Lanes<1>(-27.0))[0] == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(cbrt(Lanes<1>(0.0))[0] == 0.0);
  CHECK(log1p(Lanes<1>(0.0))[0] == 0.0);
  CHECK(sin(Lanes<1>(0.0))[0] == 0.0);
}

TEST_CASE("lane masks and select") {
  Lanes<8> a, b(0.5);
  for (int i = 0; i < 8; ++i) a.set(i, i * 0.25);
  const auto m = a < b;
  CHECK(any(m));
  CHECK(!all(m));
  CHECK(all(m | !m));
  CHECK(!any(m & !m));
  const auto s = select(m, a, b);
  for (int i = 0; i < 8; ++i) CHECK(s[i] == (i * 0.25 < 0.5 ? i * 0.25 : 0.5));
}

TEST_CASE("width 1 and width 8 give bitwise identical results lane by lane") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3, 3);
  const QuadSpline spline{{0, 0, 0}, {1, 1.2, 0.3}, {2, -0.2, 0.1}};
  const SmoothParams P;
  for (int it = 0; it < 200; ++it) {
    Lanes<8> x, y, z;
    for (int i = 0; i < 8; ++i) {
      x.set(i, u(rng));
      y.set(i, u(rng));
      z.set(i, u(rng));
    }
    const auto wide = project_point_k(spline, Vec3<Lanes<8>>(x, y, z), P);
    for (int i = 0; i < 8; ++i) {
      const auto narrow = project_point_k(spline, Vec3<Lanes<1>>(Lanes<1>(x[i]), Lanes<1>(y[i]), Lanes<1>(z[i])), P);
      for (int k = 0; k < 3; ++k) REQUIRE(same_bits(wide.t[k][i], narrow.t[k][0]));
      REQUIRE(same_bits(exp(x)[i], exp(Lanes<1>(x[i]))[0]));
      REQUIRE(same_bits(acos(Lanes<8>(x / 3.0))[i], acos(Lanes<1>(x[i] / 3.0))[0]));
      REQUIRE(same_bits(cbrt(y)[i], cbrt(Lanes<1>(y[i]))[0]));
      REQUIRE(same_bits(cos(z)[i], cos(Lanes<1>(z[i]))[0]));
    }
  }
}

TEST_CASE("dual arithmetic and nesting") {
  using D = Dual<double, 2>;
  const D x = make_variable<double, 2>(1.5, 0), y = make_variable<double, 2>(-0.4, 1);
  const D f = x * y + exp(x) / (1.0 + y * y) - sqrt(x) * cbrt(y);
  const double fx = -0.4 + std::exp(1.5) / 1.16 - 0.5 / std::sqrt(1.5) * std::cbrt(-0.4);
  const double fy = 1.5 - std::exp(1.5) * 2 * -0.4 / (1.16 * 1.16) - std::sqrt(1.5) / (3 * std::cbrt(0.16));
  CHECK(f.d[0] == doctest::Approx(fx).epsilon(1e-13));
  CHECK(f.d[1] == doctest::Approx(fy).epsilon(1e-13));

  // second derivative through nesting: d2/dx2 of sin(x) log(x)
  using DD = Dual<Dual<double, 1>, 1>;
  const double x0 = 0.8;
  const DD xx = make_variable<Dual<double, 1>, 1>(make_variable<double, 1>(x0, 0), 0);
  const DD g = sin(xx) * log(xx);
  const double g2 = -std::sin(x0) * std::log(x0) + 2 * std::cos(x0) / x0 - std::sin(x0) / (x0 * x0);
  CHECK(g.d[0].d[0] == doctest::Approx(g2).epsilon(1e-12));

  // comparisons act on values only
  CHECK((x > y));
  CHECK(value_of(select(x < y, x, y)) == -0.4);
  CHECK(strip(f).d[0] == 0.0);
}

TEST_CASE("seed_point and gradient") {
  const auto s = seed_point(Vec3d{1, 2, 3});
  for (int i = 0; i < 3; ++i) {
    CHECK(s[i].v == i + 1.0);
    for (int j = 0; j < 3; ++j) CHECK(s[i].d[j] == (i == j ? 1.0 : 0.0));
  }
  const auto o = seed_point(Vec3d{0, 0, 0});
  for (int i = 0; i < 3; ++i) CHECK(o[i].v == 0.0);

  const SmoothParams P;
  const auto hs = testing_support::leaf(HalfSpace{{0, 0, 1}, 0.0});
  std::mt19937_64 rng(2);
  for (int it = 0; it < 20; ++it) {
    const auto [v, g] = tree_sdf_grad(hs, testing_support::uniform_vec(rng, -3, 3), P);
    CHECK(g.x == 0.0);
    CHECK(g.y == 0.0);
    CHECK(g.z == 1.0);
  }
  const auto [sv, sg] = gradient([](const auto& x) { return sqrt(dot(x, x)) - 1.0; }, Vec3d{2, 0, 0});
  CHECK(sv == 1.0);
  CHECK(sg.x == doctest::Approx(1.0));
  CHECK(sg.y == 0.0);
  CHECK(sg.z == 0.0);
}

TEST_CASE("chain rule over random compositions matches finite differences") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> pick(0, 6);
  int fails = 0;
  for (int it = 0; it < 1000; ++it) {
    int ops[4];
    for (int& o : ops) o = pick(rng);
    auto f = [&](auto x) {
      for (int o : ops) {
        switch (o) {
          case 0: x = exp(x * 0.3); break;
          case 1: x = log(x * x + 1.0); break;
          case 2: x = sqrt(x * x + 0.5); break;
          case 3: x = sin(x) + cos(x * 2.0); break;
          case 4: x = cbrt(x + 3.0); break;
          case 5: x = sigmoid_unit(x) * 2.0 - 0.3; break;
          default: x = softplus_unit(x) - x * 0.1; break;
        }
      }
      return x;
    };
    const double x0 = testing_support::uniform(rng, -1.5, 1.5);
    const auto r = f(make_variable<double, 1>(x0, 0));
    const double h = 1e-6;
    const double fd = (f(Dual<double, 1>(x0 + h)).v - f(Dual<double, 1>(x0 - h)).v) / (2 * h);
    if (std::fabs(r.d[0] - fd) > 1e-6 * std::max(std::fabs(fd), 1e-3)) ++fails;
  }
  CHECK(fails == 0);
}
