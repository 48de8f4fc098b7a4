#pragma once

// Generic manifold kernel. Included from contact.hpp; do not include directly.

#include <array>
#include <vector>

namespace contax {

template <class S>
struct TraceT {
  Vec3<S> p_I, p_II, p_e;
  S alpha_I, alpha_II;
};

// Gated sphere trace from both ends of the segment vI -> vII. phiI and phiII
// are the field values at the endpoints (already known to the caller).
template <class S, class Field>
TraceT<S> trace_edge_k(const Vec3<S>& vI, const Vec3<S>& vII, const S& phiI, const S& phiII, Field& phi, int iters,
                       const SmoothParams& params) {
  const Vec3<S> d = vII - vI;
  const S L = norm(d);
  const Vec3<S> et = d / L;
  S aI(0.0), aII = L;
  S fI = phiI, fII = phiII;
  for (int k = 0; k < iters; ++k) {
    if (k > 0) {
      fI = phi(Vec3<S>(vI + et * aI));
      fII = phi(Vec3<S>(vI + et * aII));
    }
    aI = aI + smooth::sigmoid(fI, S(0.0), params.tau_cmp) * fI;
    aII = aII - smooth::sigmoid(fII, S(0.0), params.tau_cmp) * fII;
  }
  TraceT<S> r;
  r.alpha_I = smooth::softclip(aI, S(0.0), L, params.tau_clip);
  r.alpha_II = smooth::softclip(aII, S(0.0), L, params.tau_clip);
  r.p_I = vI + et * r.alpha_I;
  r.p_II = vI + et * r.alpha_II;
  r.p_e = (r.p_I + r.p_II) * S(0.5);
  return r;
}

template <class S>
struct ContactT {
  ContactKind kind = ContactKind::Face;
  int index = 0;
  Vec3<S> position;
  S depth;
  Vec3<S> normal;
  S activity;
  std::array<S, 36> J;
  std::array<S, 6> z;
  int nz = 6;
};

// J = [s I, -skew(c - s tA), -s I, skew(c - s tB)], the weighted sum of
// per-point Jacobians with total weight s and weighted point sum c.
template <class S>
inline void jacobian_k(const Vec3<S>& c, const S& s, const Vec3<S>& tA, const Vec3<S>& tB, std::array<S, 36>& J) {
  for (auto& v : J) v = S(0.0);
  const Vec3<S> ra = c - tA * s;
  const Vec3<S> rb = c - tB * s;
  const Mat3<S> ka = skew(ra), kb = skew(rb);
  for (int r = 0; r < 3; ++r) {
    J[r * 12 + r] = s;
    J[r * 12 + 6 + r] = -s;
    for (int k = 0; k < 3; ++k) {
      J[r * 12 + 3 + k] = -ka.m[r][k];
      J[r * 12 + 9 + k] = kb.m[r][k];
    }
  }
}

// Six candidates (world positions, depths, unit world normals) -> one contact.
template <class S>
ContactT<S> fuse_face_k(const Vec3<S>* p, const S* d, const Vec3<S>* n, const Vec3<S>& tA, const Vec3<S>& tB,
                        DepthFusion depth_mode, const SmoothParams& params) {
  using B = base_t<S>;
  ContactT<S> out;
  S negd[6];
  for (int i = 0; i < 6; ++i) negd[i] = -d[i];
  smooth::softargmax(negd, 6, params.tau_min, out.z.data());

  S zg[6];
  for (int i = 0; i < 6; ++i) zg[i] = out.z[i] * smooth::sigmoid(negd[i], S(0.0), params.tau_cmp);

  Vec3<S> nsum = n[0] * zg[0], c = p[0] * zg[0], pos = p[0] * out.z[0];
  S s = zg[0], wd = zg[0] * d[0];
  Vec3<S> nbest = n[0];
  B best = value_of(zg[0]);
  for (int i = 1; i < 6; ++i) {
    nsum += n[i] * zg[i];
    c += p[i] * zg[i];
    pos += p[i] * out.z[i];
    s = s + zg[i];
    wd = wd + zg[i] * d[i];
    const auto better = value_of(zg[i]) > best;
    nbest = select(better, n[i], nbest);
    best = select(better, value_of(zg[i]), best);
  }
  const S nn2 = dot(nsum, nsum);
  const auto tiny = value_of(nn2) < B(1e-18);
  out.normal = select(tiny, nbest, Vec3<S>(nsum / sqrt(select(tiny, S(1.0), nn2))));
  out.depth = depth_mode == DepthFusion::SmoothMin ? smooth::smin(d, 6, params.tau_min) : wd;
  out.position = pos;
  out.activity = s;
  jacobian_k(c, s, tA, tB, out.J);
  return out;
}

// A single candidate as its own contact (full mode); J carries the activity.
template <class S>
ContactT<S> point_contact_k(ContactKind kind, int index, const Vec3<S>& p, const S& d, const Vec3<S>& n,
                            const Vec3<S>& tA, const Vec3<S>& tB, const SmoothParams& params) {
  ContactT<S> out;
  out.kind = kind;
  out.index = index;
  out.position = p;
  out.depth = d;
  out.normal = n;
  out.activity = smooth::sigmoid(S(-d), S(0.0), params.tau_cmp);
  out.z[0] = S(1.0);
  out.nz = 1;
  jacobian_k(Vec3<S>(p * out.activity), out.activity, tA, tB, out.J);
  return out;
}

template <class S>
struct ManifoldT {
  std::vector<ContactT<S>> contacts;
  base_t<S> multi_crossing_edges{};
};

template <class S>
struct SdfField {
  const GeometryTree& tree;
  const SmoothParams& params;
  template <class T>
  T operator()(const Vec3<T>& x) const {
    return body_sdf_k(tree, x, params);
  }
};

// Mesh body A, SDF body B (tree evaluated in B's frame; tree.pose unused).
template <class S>
void manifold_k(const TriangleMesh& mesh, const GeometryTree& sdf, const PoseT<S>& A, const PoseT<S>& Bp,
                const ContactConfig& cfg, const SmoothParams& params, ManifoldT<S>& out) {
  using D = Dual<S, 3>;
  using Bs = base_t<S>;
  const int nv = static_cast<int>(mesh.vertices.size());
  const int ne = static_cast<int>(mesh.edges.size());
  const SdfField<S> field{sdf, params};

  const Mat3<S> Rrel = transpose(Bp.R) * A.R;
  const Vec3<S> trel = mul_transpose(Bp.R, Vec3<S>(A.t - Bp.t));

  auto sample = [&](const Vec3<S>& x, S& phi, Vec3<S>& n_world, Vec3<S>& p_world) {
    const D r = field(seed_point(x));
    phi = r.v;
    const Vec3<S> g(r.d[0], r.d[1], r.d[2]);
    n_world = Bp.R * (g / sqrt(dot(g, g) + 1e-30));
    p_world = Bp.R * x + Bp.t;
  };

  std::vector<Vec3<S>> vloc(nv), vn(nv), vw(nv);
  std::vector<S> vphi(nv);
  for (int v = 0; v < nv; ++v) {
    vloc[v] = Rrel * Vec3<S>::lift(mesh.vertices[v]) + trel;
    sample(vloc[v], vphi[v], vn[v], vw[v]);
  }

  std::vector<Vec3<S>> en(ne), ew(ne);
  std::vector<S> ephi(ne);
  Bs multi(0.0);
  for (int e = 0; e < ne; ++e) {
    const int a = mesh.edges[e][0], b = mesh.edges[e][1];
    const TraceT<S> tr = trace_edge_k(vloc[a], vloc[b], vphi[a], vphi[b], field, cfg.iters, params);
    sample(tr.p_e, ephi[e], en[e], ew[e]);
    const auto flag = (value_of(vphi[a]) < Bs(0.0)) & (value_of(vphi[b]) < Bs(0.0)) & (value_of(ephi[e]) > Bs(0.0));
    multi = multi + select(flag, Bs(1.0), Bs(0.0));
  }
  out.multi_crossing_edges = multi;

  out.contacts.clear();
  if (cfg.mode == ManifoldMode::Full) {
    out.contacts.reserve(nv + ne);
    for (int v = 0; v < nv; ++v)
      out.contacts.push_back(point_contact_k(ContactKind::Vertex, v, vw[v], vphi[v], vn[v], A.t, Bp.t, params));
    for (int e = 0; e < ne; ++e)
      out.contacts.push_back(point_contact_k(ContactKind::Edge, e, ew[e], ephi[e], en[e], A.t, Bp.t, params));
    return;
  }
  const int nf = static_cast<int>(mesh.faces.size());
  out.contacts.reserve(nf);
  for (int f = 0; f < nf; ++f) {
    Vec3<S> p[6], n[6];
    S d[6];
    for (int k = 0; k < 3; ++k) {
      const int v = mesh.faces[f][k];
      const int e = mesh.face_edges[f][k];
      p[k] = vw[v];
      d[k] = vphi[v];
      n[k] = vn[v];
      p[3 + k] = ew[e];
      d[3 + k] = ephi[e];
      n[3 + k] = en[e];
    }
    ContactT<S> c = fuse_face_k(p, d, n, A.t, Bp.t, cfg.depth, params);
    c.kind = ContactKind::Face;
    c.index = f;
    out.contacts.push_back(c);
  }
}

inline double lane_get(double x, int) { return x; }
template <int W>
inline double lane_get(const Lanes<W>& x, int lane) {
  return x[lane];
}

template <class S>
ContactPoint extract_contact(const ContactT<S>& c, int lane) {
  ContactPoint p;
  p.kind = c.kind;
  p.index = c.index;
  for (int k = 0; k < 3; ++k) {
    p.position[k] = lane_get(c.position[k], lane);
    p.normal[k] = lane_get(c.normal[k], lane);
  }
  p.depth = lane_get(c.depth, lane);
  p.activity = lane_get(c.activity, lane);
  for (int k = 0; k < 36; ++k) p.jacobian[k] = lane_get(c.J[k], lane);
  p.n_weights = c.nz;
  for (int k = 0; k < c.nz; ++k) p.weights[k] = lane_get(c.z[k], lane);
  return p;
}

}  // namespace contax
