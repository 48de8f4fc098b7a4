#include "contax/tree.hpp"

#include <cmath>

#include "contax/error.hpp"

namespace contax {

namespace {

struct Validate {
  void operator()(const HalfSpace& h) const { h.validate(); }
  void operator()(const Superquadric&) const {}
  void operator()(const PSQ& p) const { p.validate(); }
  void operator()(const XPSQ& X) const {
    XPSQ copy = X;
    copy.validate();
  }
  void operator()(const Combine& c) const {
    const size_t n = c.children.size();
    if (c.op == CombineOp::Subtraction ? n != 2 : n < 2)
      throw Error(ErrorKind::Arity, c.op == CombineOp::Subtraction ? "subtraction takes exactly 2 children"
                                                                   : "union/intersection take at least 2 children");
    if (n > static_cast<size_t>(kMaxFanIn)) throw Error(ErrorKind::Arity, "too many children in one combinator");
    for (const auto& ch : c.children) validate_tree(ch);
  }
};

struct Leaves {
  int operator()(const Combine& c) const {
    int n = 0;
    for (const auto& ch : c.children) n += leaf_count(ch);
    return n;
  }
  template <class T>
  int operator()(const T&) const {
    return 1;
  }
};

}  // namespace

void validate_tree(const GeometryTree& tree) {
  tree.pose.validate();
  std::visit(Validate{}, tree.node);
}

int leaf_count(const GeometryTree& tree) { return std::visit(Leaves{}, tree.node); }

GeometryTree truncate_root(const GeometryTree& tree, int k) {
  const auto* c = std::get_if<Combine>(&tree.node);
  if (!c || k >= static_cast<int>(c->children.size())) return tree;
  if (k < 1) throw Error(ErrorKind::InvalidParameter, "complexity must be at least 1");
  GeometryTree out;
  out.pose = tree.pose;
  if (k == 1) {
    const GeometryTree& only = c->children[0];
    out.pose = tree.pose * only.pose;
    out.node = only.node;
    return out;
  }
  Combine trimmed{c->op, {c->children.begin(), c->children.begin() + k}};
  out.node = std::move(trimmed);
  return out;
}

double tree_sdf(const GeometryTree& tree, const Vec3d& x_world, const SmoothParams& params) {
  if (!std::isfinite(x_world.x) || !std::isfinite(x_world.y) || !std::isfinite(x_world.z))
    throw Error(ErrorKind::NonFiniteInput, "query point is not finite");
  return tree_sdf_k(tree, x_world, params);
}

std::pair<double, Vec3d> tree_sdf_grad(const GeometryTree& tree, const Vec3d& x_world, const SmoothParams& params) {
  if (!std::isfinite(x_world.x) || !std::isfinite(x_world.y) || !std::isfinite(x_world.z))
    throw Error(ErrorKind::NonFiniteInput, "query point is not finite");
  return gradient([&](const auto& x) { return tree_sdf_k(tree, x, params); }, x_world);
}

}  // namespace contax
