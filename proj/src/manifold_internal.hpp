#pragma once

#include "contax/contact.hpp"

namespace contax {

void check_manifold_inputs(const TriangleMesh& mesh, const Pose& pose_A, const GeometryTree& sdf,
                           const ContactConfig& config, const SmoothParams& params);

template <class S>
ContactManifold to_manifold(const ManifoldT<S>& m, int lane, ManifoldMode mode) {
  ContactManifold out;
  out.mode = mode;
  out.contacts.reserve(m.contacts.size());
  for (const auto& c : m.contacts) out.contacts.push_back(extract_contact(c, lane));
  out.multi_crossing_edges = static_cast<int>(lane_get(m.multi_crossing_edges, lane));
  return out;
}

}  // namespace contax

namespace contax {

struct PosePair;

// Runs count (<= W) items through the lane kernel; unused lanes repeat the last item.
template <int W>
void manifold_pack(const TriangleMesh& mesh, const GeometryTree& sdf, const PosePair* items, int count,
                   const ContactConfig& config, const SmoothParams& params, ContactManifold* out);

extern template void manifold_pack<1>(const TriangleMesh&, const GeometryTree&, const PosePair*, int,
                                      const ContactConfig&, const SmoothParams&, ContactManifold*);
extern template void manifold_pack<8>(const TriangleMesh&, const GeometryTree&, const PosePair*, int,
                                      const ContactConfig&, const SmoothParams&, ContactManifold*);

}  // namespace contax
