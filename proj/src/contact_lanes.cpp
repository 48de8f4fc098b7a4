#include "contax/batch.hpp"
#include "contax/contact.hpp"
#include "manifold_internal.hpp"

namespace contax {

template <int W>
void manifold_pack(const TriangleMesh& mesh, const GeometryTree& sdf, const PosePair* items, int count,
                   const ContactConfig& config, const SmoothParams& params, ContactManifold* out) {
  using L = Lanes<W>;
  PoseT<L> A, B;
  for (int l = 0; l < W; ++l) {
    const PosePair& it = items[l < count ? l : count - 1];
    for (int i = 0; i < 3; ++i) {
      A.t[i].set(l, it.mesh_pose.t[i]);
      B.t[i].set(l, it.sdf_pose.t[i]);
      for (int j = 0; j < 3; ++j) {
        A.R.m[i][j].set(l, it.mesh_pose.R.m[i][j]);
        B.R.m[i][j].set(l, it.sdf_pose.R.m[i][j]);
      }
    }
  }
  ManifoldT<L> m;
  manifold_k<L>(mesh, sdf, A, B, config, params, m);
  for (int l = 0; l < count; ++l) out[l] = to_manifold(m, l, config.mode);
}

template void manifold_pack<1>(const TriangleMesh&, const GeometryTree&, const PosePair*, int, const ContactConfig&,
                               const SmoothParams&, ContactManifold*);
template void manifold_pack<8>(const TriangleMesh&, const GeometryTree&, const PosePair*, int, const ContactConfig&,
                               const SmoothParams&, ContactManifold*);

ContactManifold build_manifold(const TriangleMesh& mesh, const Pose& pose_A, const GeometryTree& sdf,
                               const ContactConfig& config, const SmoothParams& params) {
  check_manifold_inputs(mesh, pose_A, sdf, config, params);
  const PosePair item{pose_A, sdf.pose};
  ContactManifold out;
  manifold_pack<1>(mesh, sdf, &item, 1, config, params, &out);
  return out;
}

}  // namespace contax
