#pragma once

#include <array>
#include <string>
#include <vector>

#include "contax/geometry.hpp"
#include "contax/mesh.hpp"
#include "contax/tree.hpp"

namespace contax {

enum class ManifoldMode { Full, Reduced };
enum class DepthFusion { SmoothMin, Weighted };

struct ContactConfig {
  ManifoldMode mode = ManifoldMode::Reduced;
  int iters = 3;
  DepthFusion depth = DepthFusion::SmoothMin;
};

// 3x12, row-major; columns are [v_A, w_A, v_B, w_B].
using Jacobian = std::array<double, 36>;

struct EdgeContact {
  Vec3d p_I, p_II, p_e;
  double phi_at_pe = 0.0;
  double alpha_I = 0.0, alpha_II = 0.0;
  bool multi_crossing = false;
};

enum class ContactKind { Face, Vertex, Edge };

struct ContactPoint {
  ContactKind kind = ContactKind::Face;
  int index = 0;  // face, vertex or edge index
  Vec3d position;
  double depth = 0.0;
  Vec3d normal;
  double activity = 0.0;
  Jacobian jacobian{};
  std::array<double, 6> weights{};  // fusion weights; only the first n_weights are used
  int n_weights = 0;                // 6 for face contacts, 1 otherwise
};

struct ContactManifold {
  std::string body_a, body_b;  // mesh body, SDF body
  ManifoldMode mode = ManifoldMode::Reduced;
  std::vector<ContactPoint> contacts;
  int multi_crossing_edges = 0;

  int active_count(double threshold = 1e-6) const;
};

// Edge-SDF trace with an arbitrary field phi (callable on Vec3d).
template <class Field>
EdgeContact sphere_trace_edge(const Edge& edge, Field&& phi, int iters, const SmoothParams& params);

// The tree is evaluated in world coordinates.
EdgeContact sphere_trace_edge(const Edge& edge, const GeometryTree& sdf, int iters, const SmoothParams& params);

// Face vertices followed by the midpoints of its edges in face_edges order.
std::array<Vec3d, 6> face_candidates(const TriangleMesh& mesh, int face, const std::vector<EdgeContact>& edge_contacts);

Jacobian contact_jacobian(const Vec3d& p, const Pose& pose_A, const Pose& pose_B);

// Candidates in world coordinates; sdf is the SDF body (pose included).
ContactPoint fuse_face_contact(const std::array<Vec3d, 6>& candidates, const GeometryTree& sdf, const Pose& pose_A,
                               const SmoothParams& params, DepthFusion depth = DepthFusion::SmoothMin);

// Mesh body A (mesh in its own frame, placed by pose_A); SDF body B placed by
// its tree's root pose. Runs the lane kernel at width 1.
ContactManifold build_manifold(const TriangleMesh& mesh, const Pose& pose_A, const GeometryTree& sdf,
                               const ContactConfig& config, const SmoothParams& params);

namespace reference {
// Same kernel on plain doubles with the C library's math functions.
ContactManifold build_manifold(const TriangleMesh& mesh, const Pose& pose_A, const GeometryTree& sdf,
                               const ContactConfig& config, const SmoothParams& params);
}  // namespace reference

}  // namespace contax

#include "contax/contact_kernel.hpp"

namespace contax {

template <class Field>
EdgeContact sphere_trace_edge(const Edge& edge, Field&& phi, int iters, const SmoothParams& params) {
  const auto r = trace_edge_k<double>(edge.v_I, edge.v_II, phi(edge.v_I), phi(edge.v_II), phi, iters, params);
  EdgeContact out;
  out.p_I = r.p_I;
  out.p_II = r.p_II;
  out.p_e = r.p_e;
  out.alpha_I = r.alpha_I;
  out.alpha_II = r.alpha_II;
  out.phi_at_pe = phi(r.p_e);
  out.multi_crossing = phi(edge.v_I) < 0.0 && phi(edge.v_II) < 0.0 && out.phi_at_pe > 0.0;
  return out;
}

}  // namespace contax
