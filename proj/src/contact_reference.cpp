#include <cmath>
#include <string>

#include "contax/contact.hpp"
#include "contax/error.hpp"
#include "manifold_internal.hpp"

namespace contax {

int ContactManifold::active_count(double threshold) const {
  int n = 0;
  for (const auto& c : contacts)
    if (c.activity > threshold) ++n;
  return n;
}

void check_manifold_inputs(const TriangleMesh& mesh, const Pose& pose_A, const GeometryTree& sdf,
                           const ContactConfig& config, const SmoothParams& params) {
  params.validate();
  pose_A.validate();
  sdf.pose.validate();
  if (config.iters < 1) throw Error(ErrorKind::InvalidParameter, "contact iters must be at least 1");
  if (mesh.vertices.empty()) throw Error(ErrorKind::EmptyInput, "mesh has no vertices");
}

EdgeContact sphere_trace_edge(const Edge& edge, const GeometryTree& sdf, int iters, const SmoothParams& params) {
  params.validate();
  if (iters < 1) throw Error(ErrorKind::InvalidParameter, "iters must be at least 1");
  auto phi = [&](const auto& x) { return tree_sdf_k(sdf, x, params); };
  return sphere_trace_edge(edge, phi, iters, params);
}

std::array<Vec3d, 6> face_candidates(const TriangleMesh& mesh, int face, const std::vector<EdgeContact>& edge_contacts) {
  if (face < 0 || face >= static_cast<int>(mesh.faces.size()))
    throw Error(ErrorKind::InvalidParameter, "face index " + std::to_string(face) + " out of range");
  if (edge_contacts.size() != mesh.edges.size())
    throw Error(ErrorKind::InvalidParameter, "edge contacts must cover every mesh edge");
  std::array<Vec3d, 6> out;
  for (int k = 0; k < 3; ++k) {
    out[k] = mesh.vertices[mesh.faces[face][k]];
    out[3 + k] = edge_contacts[mesh.face_edges[face][k]].p_e;
  }
  return out;
}

Jacobian contact_jacobian(const Vec3d& p, const Pose& pose_A, const Pose& pose_B) {
  std::array<double, 36> J;
  jacobian_k(p, 1.0, pose_A.t, pose_B.t, J);
  return J;
}

ContactPoint fuse_face_contact(const std::array<Vec3d, 6>& candidates, const GeometryTree& sdf, const Pose& pose_A,
                               const SmoothParams& params, DepthFusion depth) {
  params.validate();
  double d[6];
  Vec3d n[6];
  for (int i = 0; i < 6; ++i) {
    const auto [v, g] = tree_sdf_grad(sdf, candidates[i], params);
    d[i] = v;
    n[i] = g / std::sqrt(dot(g, g) + 1e-30);
  }
  const ContactT<double> c = fuse_face_k(candidates.data(), d, n, pose_A.t, sdf.pose.t, depth, params);
  return extract_contact(c, 0);
}

namespace reference {

ContactManifold build_manifold(const TriangleMesh& mesh, const Pose& pose_A, const GeometryTree& sdf,
                               const ContactConfig& config, const SmoothParams& params) {
  check_manifold_inputs(mesh, pose_A, sdf, config, params);
  ManifoldT<double> m;
  manifold_k<double>(mesh, sdf, PoseT<double>::lift(pose_A), PoseT<double>::lift(sdf.pose), config, params, m);
  return to_manifold(m, 0, config.mode);
}

}  // namespace reference

}  // namespace contax
