#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "contax/geometry.hpp"
#include "contax/xpsq.hpp"

namespace contax {

struct GeometryTree;

struct Combine {
  CombineOp op = CombineOp::Union;
  std::vector<GeometryTree> children;
};

// A node placed in its parent's frame by pose (identity unless given). The
// root's pose is the body pose.
struct GeometryTree {
  Pose pose;
  std::variant<HalfSpace, Superquadric, PSQ, XPSQ, Combine> node;
};

// Checks arity, fan-in and leaf invariants; throws Error.
void validate_tree(const GeometryTree& tree);

int leaf_count(const GeometryTree& tree);

// Copy of tree whose root combinator keeps only its first k children; a
// single remaining child replaces the combinator.
GeometryTree truncate_root(const GeometryTree& tree, int k);

template <class S>
S tree_sdf_k(const GeometryTree& tree, const Vec3<S>& x_parent, const SmoothParams& params);

namespace tree_detail {

template <class S>
struct Eval {
  const Vec3<S>& x;
  const SmoothParams& params;

  S operator()(const HalfSpace& h) const { return halfspace_sdf_k(h.n, h.h, x); }
  S operator()(const Superquadric& sq) const { return sq_sdf_k(sq, x); }
  S operator()(const PSQ& p) const { return psq_sdf_k(p, x, params.tau_min); }
  S operator()(const XPSQ& X) const { return xpsq_sdf_k(X, x, params); }
  S operator()(const Combine& c) const {
    S phis[kMaxFanIn];
    const int n = static_cast<int>(c.children.size());
    for (int i = 0; i < n; ++i) phis[i] = tree_sdf_k(c.children[i], x, params);
    return combine_k(c.op, phis, n, params.tau_min);
  }
};

}  // namespace tree_detail

template <class S>
S tree_sdf_k(const GeometryTree& tree, const Vec3<S>& x_parent, const SmoothParams& params) {
  const Vec3<S> x = to_local(tree.pose, x_parent);
  return std::visit(tree_detail::Eval<S>{x, params}, tree.node);
}

// Evaluates in the tree's own frame (the root pose is skipped).
template <class S>
S body_sdf_k(const GeometryTree& tree, const Vec3<S>& x_body, const SmoothParams& params) {
  return std::visit(tree_detail::Eval<S>{x_body, params}, tree.node);
}

double tree_sdf(const GeometryTree& tree, const Vec3d& x_world, const SmoothParams& params);

// Value and world-frame gradient through forward-mode duals.
std::pair<double, Vec3d> tree_sdf_grad(const GeometryTree& tree, const Vec3d& x_world, const SmoothParams& params);

// Value and gradient of any generic field f (callable on Vec3<Dual<double,3>>).
template <class F>
std::pair<double, Vec3d> gradient(F&& f, const Vec3d& x) {
  const Dual<double, 3> r = f(seed_point(x));
  return {r.v, Vec3d{r.d[0], r.d[1], r.d[2]}};
}

}  // namespace contax
