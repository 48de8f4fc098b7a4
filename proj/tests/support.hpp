#pragma once

// Shared helpers for the unit tests and the acceptance binary: random
// generators, finite differences and brute-force oracles that do not go
// through the code under test.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "contax/contact.hpp"
#include "contax/geometry.hpp"
#include "contax/spline.hpp"
#include "contax/tree.hpp"
#include "contax/xpsq.hpp"

namespace testing_support {

using contax::Pose;
using contax::QuadSpline;
using contax::Vec3d;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vec3d uniform_vec(std::mt19937_64& rng, double lo, double hi) {
  return {uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi)};
}

inline Vec3d unit_vec(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  for (;;) {
    Vec3d v{g(rng), g(rng), g(rng)};
    const double n = contax::norm(v);
    if (n > 1e-6) return v / n;
  }
}

inline Pose random_rigid(std::mt19937_64& rng, double tr = 1.0) {
  std::normal_distribution<double> g;
  return Pose::from_quaternion(g(rng), g(rng), g(rng), g(rng), uniform_vec(rng, -tr, tr));
}

// Rotation exp(skew(w)) by Rodrigues' formula.
inline contax::Mat3d rodrigues(const Vec3d& w) {
  const double th = contax::norm(w);
  contax::Mat3d K = contax::skew(w);
  contax::Mat3d K2 = K * K;
  const double a = th < 1e-12 ? 1.0 : std::sin(th) / th;
  const double b = th < 1e-12 ? 0.5 : (1.0 - std::cos(th)) / (th * th);
  contax::Mat3d R = contax::Mat3d::identity();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) R.m[i][j] += a * K.m[i][j] + b * K2.m[i][j];
  return R;
}

// Central differences of a scalar field.
template <class F>
Vec3d fd_gradient(F&& f, const Vec3d& x, double h) {
  Vec3d g;
  for (int k = 0; k < 3; ++k) {
    Vec3d xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    g[k] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

inline double rel_err(const Vec3d& a, const Vec3d& b, double floor = 1e-8) {
  return contax::norm(a - b) / std::max(contax::norm(b), floor);
}

// Minimizer of |x - p(t)|^2 over [0,1]: dense grid, then golden-section
// refinement around the best sample.
inline double brute_project(const QuadSpline& s, const Vec3d& x, int grid = 10000) {
  auto dist2 = [&](double t) {
    const Vec3d p = s.p1 * ((1 - t) * (1 - t)) + s.p2 * (2 * t * (1 - t)) + s.p3 * (t * t);
    const Vec3d d = x - p;
    return contax::dot(d, d);
  };
  int best = 0;
  double bd = dist2(0.0);
  for (int i = 1; i <= grid; ++i) {
    const double v = dist2(double(i) / grid);
    if (v < bd) {
      bd = v;
      best = i;
    }
  }
  double a = std::max(0.0, double(best - 1) / grid), b = std::min(1.0, double(best + 1) / grid);
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  for (int it = 0; it < 100; ++it) {
    if (dist2(c) < dist2(d))
      b = d;
    else
      a = c;
    c = b - r * (b - a);
    d = a + r * (b - a);
  }
  return 0.5 * (a + b);
}

inline double spline_dist(const QuadSpline& s, const Vec3d& x, double t) {
  const Vec3d p = s.p1 * ((1 - t) * (1 - t)) + s.p2 * (2 * t * (1 - t)) + s.p3 * (t * t);
  return contax::norm(x - p);
}

// Superquadric inside-outside value computed straight from the textbook
// formula with std::pow.
inline double sq_f_plain(double e1, double e2, const Vec3d& a, const Vec3d& x) {
  const double fx = std::pow(std::fabs(x.x / a.x), 2.0 / e2);
  const double fy = std::pow(std::fabs(x.y / a.y), 2.0 / e2);
  const double fz = std::pow(std::fabs(x.z / a.z), 2.0 / e1);
  return std::pow(fx + fy, e2 / e1) + fz;
}

// Hard membership of a PSQ: inside the SQ and below every plane.
inline bool psq_inside_hard(const contax::PSQ& p, const Vec3d& x) {
  if (sq_f_plain(p.sq.eps1, p.sq.eps2, p.sq.a, x) >= 1.0) return false;
  for (const auto& r : p.planes) {
    const Vec3d n{r[0], r[1], r[2]};
    if (contax::dot(n, x) / contax::norm(n) + r[3] >= 0.0) return false;
  }
  return true;
}

// Hard membership of a swept volume: some instantiated PSQ along the spline
// contains the point. Dense sampling in t, independent of the projection.
inline bool xpsq_inside_hard(const contax::XPSQ& X, const Vec3d& q, int samples = 4000) {
  for (int i = 0; i <= samples; ++i) {
    const double t = double(i) / samples;
    const auto [psq, pose] = contax::instantiate_psq(X, t);
    const Vec3d local = contax::to_local(pose, q);
    if (psq_inside_hard(psq, local)) return true;
  }
  return false;
}

// Hard constructive membership of a tree (hard booleans over hard leaves).
inline bool tree_inside_hard(const contax::GeometryTree& t, const Vec3d& x_parent) {
  const Vec3d x = contax::to_local(t.pose, x_parent);
  return std::visit(
      [&](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, contax::HalfSpace>) {
          return contax::dot(n.n, x) / contax::norm(n.n) + n.h < 0.0;
        } else if constexpr (std::is_same_v<N, contax::Superquadric>) {
          return sq_f_plain(n.eps1, n.eps2, n.a, x) < 1.0;
        } else if constexpr (std::is_same_v<N, contax::PSQ>) {
          return psq_inside_hard(n, x);
        } else if constexpr (std::is_same_v<N, contax::XPSQ>) {
          return xpsq_inside_hard(n, x);
        } else {
          switch (n.op) {
            case contax::CombineOp::Union:
              return std::any_of(n.children.begin(), n.children.end(),
                                 [&](const auto& c) { return tree_inside_hard(c, x); });
            case contax::CombineOp::Intersection:
              return std::all_of(n.children.begin(), n.children.end(),
                                 [&](const auto& c) { return tree_inside_hard(c, x); });
            default:
              return tree_inside_hard(n.children[0], x) && !tree_inside_hard(n.children[1], x);
          }
        }
      },
      t.node);
}

// Convex PSQ with a random SQ (eps in [0.2, 1], scale in [0.5, 1.5]) cut by
// up to three random planes that keep the origin inside.
inline contax::PSQ random_convex_psq(std::mt19937_64& rng) {
  contax::PSQ p;
  p.sq = contax::Superquadric(uniform(rng, 0.2, 1.0), uniform(rng, 0.2, 1.0), uniform_vec(rng, 0.5, 1.5));
  const int np = std::uniform_int_distribution<int>(0, 3)(rng);
  for (int i = 0; i < np; ++i) {
    const Vec3d n = unit_vec(rng);
    p.planes.push_back({n.x, n.y, n.z, -uniform(rng, 0.3, 0.8)});
  }
  return p;
}

inline contax::GeometryTree leaf(const auto& node, const Pose& pose = Pose{}) {
  contax::GeometryTree t;
  t.pose = pose;
  t.node = node;
  return t;
}

inline contax::GeometryTree combine(contax::CombineOp op, std::vector<contax::GeometryTree> children,
                                    const Pose& pose = Pose{}) {
  contax::GeometryTree t;
  t.pose = pose;
  t.node = contax::Combine{op, std::move(children)};
  return t;
}

inline contax::TriangleMesh box_mesh(const Vec3d& half = {0.5, 0.5, 0.5}) {
  std::vector<Vec3d> v;
  for (int i = 0; i < 8; ++i)
    v.push_back({(i & 1 ? 1 : -1) * half.x, (i & 2 ? 1 : -1) * half.y, (i & 4 ? 1 : -1) * half.z});
  const std::vector<std::array<int, 3>> f = {{0, 2, 3}, {0, 3, 1}, {4, 5, 7}, {4, 7, 6}, {0, 1, 5}, {0, 5, 4},
                                             {2, 6, 7}, {2, 7, 3}, {0, 4, 6}, {0, 6, 2}, {1, 3, 7}, {1, 7, 5}};
  return contax::TriangleMesh::from_triangles(v, f);
}

// Unit box as a PSQ: a large SQ cut by the six face planes.
inline contax::PSQ unit_box_psq(double half = 0.5) {
  contax::PSQ p;
  p.sq = contax::Superquadric(1.0, 1.0, {4 * half, 4 * half, 4 * half});
  for (int k = 0; k < 3; ++k)
    for (int s : {1, -1}) {
      std::array<double, 4> r{0, 0, 0, -half};
      r[k] = s;
      p.planes.push_back(r);
    }
  return p;
}

}  // namespace testing_support
