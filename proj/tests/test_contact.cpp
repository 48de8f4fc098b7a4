#include <cmath>
#include <random>

#include "contax/contact.hpp"
#include "contax/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace contax;
using namespace testing_support;

namespace {
const SmoothParams P;

GeometryTree unit_sphere(const Pose& pose = Pose{}) { return leaf(Superquadric(1, 1, {1, 1, 1}), pose); }
GeometryTree floor_tree() { return leaf(HalfSpace{{0, 0, 1}, 0.0}); }

Pose at(const Vec3d& t) {
  Pose p;
  p.t = t;
  return p;
}

Edge make_edge(const Vec3d& a, const Vec3d& b) {
  Edge e;
  e.v_I = a;
  e.v_II = b;
  e.L = norm(b - a);
  e.e_t = (b - a) / e.L;
  return e;
}

std::array<Vec3d, 6> at_heights(const std::array<double, 6>& z) {
  std::array<Vec3d, 6> c;
  for (int i = 0; i < 6; ++i) c[i] = {0.1 * i, 0.05 * i * i, z[i]};
  return c;
}

double J(const Jacobian& j, int r, int c) { return j[r * 12 + c]; }
}  // namespace

TEST_CASE("edge traces on a unit sphere") {
  const GeometryTree s = unit_sphere();
  // both ends outside; the chord at y = 0.3 crosses at x = -+sqrt(0.91)
  const EdgeContact c = sphere_trace_edge(make_edge({-2, 0.3, 0}, {2, 0.3, 0}), s, 3, P);
  CHECK(std::fabs(c.p_I.x + std::sqrt(0.91)) < 1e-3);
  CHECK(std::fabs(c.p_II.x - std::sqrt(0.91)) < 1e-3);
  CHECK(norm(c.p_e - Vec3d{0, 0.3, 0}) < 1e-9);
  CHECK(c.phi_at_pe == doctest::Approx(-0.7).epsilon(1e-9));
  CHECK_FALSE(c.multi_crossing);

  // through the center the first step lands exactly on the surface
  const EdgeContact z = sphere_trace_edge(make_edge({-2, 0, 0}, {2, 0, 0}), s, 3, P);
  CHECK(z.p_I.x == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(z.p_II.x == doctest::Approx(1.0).epsilon(1e-9));

  // missing edge: the midpoint stays outside
  const EdgeContact m = sphere_trace_edge(make_edge({-2, 2, 0}, {2, 2, 0}), s, 3, P);
  CHECK(m.phi_at_pe > 0.9);
  CHECK(std::fabs(m.p_e.x) < 1e-9);

  // start inside: the gate holds the start point in place
  const EdgeContact in = sphere_trace_edge(make_edge({-0.5, 0, 0}, {2, 0, 0}), s, 3, P);
  CHECK(std::fabs(in.alpha_I) < 1e-3);
  CHECK(in.p_II.x == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(in.p_e.x == doctest::Approx(0.25).epsilon(1e-3));

  // both ends inside but the middle outside
  const GeometryTree two = combine(CombineOp::Union, {unit_sphere(at({-1.5, 0, 0})), unit_sphere(at({1.5, 0, 0}))});
  CHECK(sphere_trace_edge(make_edge({-1.5, 0, 0}, {1.5, 0, 0}), two, 3, P).multi_crossing);

  CHECK_THROWS_AS(sphere_trace_edge(make_edge({-2, 0, 0}, {2, 0, 0}), s, 0, P), Error);
}

TEST_CASE("face candidates") {
  const TriangleMesh m = box_mesh();
  const GeometryTree s = unit_sphere(at({0, 0, -1.3}));
  std::vector<EdgeContact> ec;
  for (size_t e = 0; e < m.edges.size(); ++e) ec.push_back(sphere_trace_edge(edge_param(m, int(e)), s, 3, P));
  for (int f = 0; f < int(m.faces.size()); ++f) {
    const auto c = face_candidates(m, f, ec);
    for (int k = 0; k < 3; ++k) {
      CHECK(norm(c[k] - m.vertices[m.faces[f][k]]) == 0.0);
      CHECK(norm(c[3 + k] - ec[m.face_edges[f][k]].p_e) == 0.0);
    }
  }
  CHECK_THROWS_AS(face_candidates(m, 99, ec), Error);
  ec.pop_back();
  CHECK_THROWS_AS(face_candidates(m, 0, ec), Error);
}

TEST_CASE("contact jacobian") {
  const Pose A = at({1, 2, 3}), B = at({1, 2, 3});
  const Jacobian j0 = contact_jacobian({1, 2, 3}, A, B);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 12; ++c) {
      double want = 0.0;
      if (c == r) want = 1.0;
      if (c == 6 + r) want = -1.0;
      CHECK(J(j0, r, c) == want);
    }

  // the angular block of A is -skew(p - tA)
  const Jacobian j1 = contact_jacobian({1, 0, 0}, Pose{}, at({5, 5, 5}));
  CHECK(J(j1, 1, 5) == 1.0);
  CHECK(J(j1, 2, 4) == -1.0);
  CHECK(J(j1, 0, 3) == 0.0);

  std::mt19937_64 rng(1);
  for (int it = 0; it < 1000; ++it) {
    const Pose a = random_rigid(rng, 2), b = random_rigid(rng, 2);
    const Vec3d p = uniform_vec(rng, -2, 2);
    const Vec3d va = uniform_vec(rng, -1, 1), wa = uniform_vec(rng, -1, 1), vb = uniform_vec(rng, -1, 1),
                wb = uniform_vec(rng, -1, 1);
    const Jacobian j = contact_jacobian(p, a, b);
    const Vec3d direct = (va + cross(wa, p - a.t)) - (vb + cross(wb, p - b.t));
    for (int r = 0; r < 3; ++r) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k)
        s += J(j, r, k) * va[k] + J(j, r, 3 + k) * wa[k] + J(j, r, 6 + k) * vb[k] + J(j, r, 9 + k) * wb[k];
      REQUIRE(std::fabs(s - direct[r]) < 1e-12);
    }
  }
}

TEST_CASE("face fusion weights") {
  const GeometryTree f = floor_tree();
  const double tau = P.tau_min;
  const ContactPoint eq = fuse_face_contact(at_heights({-0.1, -0.1, -0.1, -0.1, -0.1, -0.1}), f, Pose{}, P);
  CHECK(eq.n_weights == 6);
  for (int i = 0; i < 6; ++i) CHECK(eq.weights[i] == doctest::Approx(1.0 / 6).epsilon(1e-12));
  CHECK(eq.depth == doctest::Approx(-0.1 - tau * std::log(6.0)).epsilon(1e-12));
  CHECK(eq.activity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(norm(eq.normal - Vec3d{0, 0, 1}) < 1e-12);

  const ContactPoint one = fuse_face_contact(at_heights({-0.1, -0.1 - 50 * tau, -0.1, -0.1, -0.1, -0.1}), f, Pose{}, P);
  CHECK(one.weights[1] > 1.0 - 1e-9);
  CHECK(norm(one.position - Vec3d{0.1, 0.05, -0.1 - 50 * tau}) < 1e-9);

  const ContactPoint four =
      fuse_face_contact(at_heights({-0.2, -0.2, -0.2 + 50 * tau, -0.2, -0.2 + 50 * tau, -0.2}), f, Pose{}, P);
  for (int i : {0, 1, 3, 5}) CHECK(four.weights[i] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(four.weights[2] < 1e-20);

  std::mt19937_64 rng(2);
  for (int it = 0; it < 1000; ++it) {
    std::array<double, 6> z;
    for (double& v : z) v = uniform(rng, -0.1, 0.1);
    const ContactPoint c = fuse_face_contact(at_heights(z), f, Pose{}, P);
    double s = 0.0;
    for (int i = 0; i < 6; ++i) s += c.weights[i];
    REQUIRE(std::fabs(s - 1.0) < 1e-12);
  }

  // all candidates clearly outside: the contact switches off
  const double h = 5 * P.tau_cmp;
  const ContactPoint off = fuse_face_contact(at_heights({h, h, h, h, h, h}), f, Pose{}, P);
  CHECK(off.activity < 1e-2);
  CHECK(std::fabs(J(off.jacobian, 0, 0)) < 1e-2);

  const ContactPoint w = fuse_face_contact(at_heights({-0.1, -0.1, -0.1, -0.1, -0.1, -0.1}), f, Pose{}, P,
                                           DepthFusion::Weighted);
  CHECK(w.depth == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("separated bodies produce no active contacts") {
  const TriangleMesh m = box_mesh();
  const ContactManifold c = build_manifold(m, at({0, 0, 10}), floor_tree(), ContactConfig{}, P);
  CHECK(c.contacts.size() == m.faces.size());
  CHECK(c.active_count() == 0);
}

TEST_CASE("box resting on a half-space") {
  const TriangleMesh m = box_mesh();
  const ContactManifold c = build_manifold(m, at({0.2, -0.3, 0.45}), floor_tree(), ContactConfig{}, P);
  int active = 0;
  for (const auto& k : c.contacts) {
    if (k.activity < 1e-3) continue;
    ++active;
    CHECK(norm(k.normal - Vec3d{0, 0, 1}) < 1e-6);
    CHECK(std::fabs(k.depth + 0.05) <= 3 * P.tau_min);
  }
  // two bottom triangles plus eight side triangles touch the floor
  CHECK(active == 10);
  CHECK(c.multi_crossing_edges == 0);
}

TEST_CASE("mirror-symmetric configuration gives a mirror-symmetric manifold") {
  const TriangleMesh ball = load_obj(CONTAX_DATA_DIR "/icosphere.obj");
  const GeometryTree sdf = leaf(Superquadric(0.8, 1.0, {0.9, 0.7, 0.5}));
  const ContactManifold c = build_manifold(ball, at({0, 0, 0.75}), sdf, ContactConfig{}, P);
  int active = 0;
  for (const auto& k : c.contacts) {
    if (k.activity < 1e-6) continue;
    ++active;
    bool found = false;
    for (const auto& o : c.contacts) {
      const Vec3d mp{-o.position.x, o.position.y, o.position.z};
      if (norm(mp - k.position) < 1e-9 && std::fabs(o.depth - k.depth) < 1e-9 &&
          std::fabs(o.normal.x + k.normal.x) < 1e-9)
        found = true;
    }
    CHECK(found);
  }
  CHECK(active > 0);
}

TEST_CASE("reference and lane kernels agree") {
  std::mt19937_64 rng(3);
  const TriangleMesh m = box_mesh({0.3, 0.2, 0.25});
  const GeometryTree sdf = leaf(unit_box_psq(0.6));
  for (int it = 0; it < 50; ++it) {
    const Pose A = random_rigid(rng, 0.8);
    for (ManifoldMode mode : {ManifoldMode::Reduced, ManifoldMode::Full}) {
      ContactConfig cfg;
      cfg.mode = mode;
      const ContactManifold a = build_manifold(m, A, sdf, cfg, P);
      const ContactManifold b = reference::build_manifold(m, A, sdf, cfg, P);
      REQUIRE(a.contacts.size() == b.contacts.size());
      CHECK(a.multi_crossing_edges == b.multi_crossing_edges);
      for (size_t i = 0; i < a.contacts.size(); ++i) {
        const auto &x = a.contacts[i], &y = b.contacts[i];
        REQUIRE(x.kind == y.kind);
        REQUIRE(x.index == y.index);
        REQUIRE(std::fabs(x.depth - y.depth) < 1e-8);
        REQUIRE(std::fabs(x.activity - y.activity) < 1e-8);
        REQUIRE(norm(x.position - y.position) < 1e-8);
        REQUIRE(norm(x.normal - y.normal) < 1e-7);
        for (int k = 0; k < 36; ++k) REQUIRE(std::fabs(x.jacobian[k] - y.jacobian[k]) < 1e-7);
      }
    }
  }
}

TEST_CASE("forward-mode pose derivatives match finite differences") {
  using D = Dual<double, 6>;
  const TriangleMesh m = box_mesh({0.3, 0.25, 0.2});
  const GeometryTree sdf = leaf(Superquadric(0.7, 0.9, {1.0, 0.8, 0.6}));
  std::mt19937_64 rng(4);
  ContactConfig cfg;
  int checked = 0, ok = 0;
  for (int it = 0; it < 20; ++it) {
    Pose A = random_rigid(rng, 0.1);
    A.t = A.t + Vec3d{0, 0, 0.72};

    // A(xi) = ((I + skew w) R0, t0 + v), derivatives taken at xi = 0
    PoseT<D> Ad = PoseT<D>::lift(A);
    Vec3<D> w;
    for (int k = 0; k < 3; ++k) {
      Ad.t[k] = make_variable<double, 6>(A.t[k], k);
      w[k] = make_variable<double, 6>(0.0, 3 + k);
    }
    const Mat3<D> dR = Mat3<D>::identity();
    Mat3<D> I_w = dR;
    const Mat3<D> K = skew(w);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) I_w.m[i][j] = I_w.m[i][j] + K.m[i][j];
    Ad.R = I_w * Mat3<D>::lift(A.R);
    ManifoldT<D> md;
    manifold_k<D>(m, sdf, Ad, PoseT<D>::lift(sdf.pose), cfg, P, md);

    const double h = 1e-6;
    auto perturbed = [&](int k, double s) {
      Pose p = A;
      if (k < 3) {
        p.t[k] += s * h;
      } else {
        Vec3d e{};
        e[k - 3] = s * h;
        p.R = rodrigues(e) * A.R;
      }
      return reference::build_manifold(m, p, sdf, cfg, P);
    };
    std::array<ContactManifold, 12> fd;
    for (int k = 0; k < 6; ++k) {
      fd[2 * k] = perturbed(k, 1);
      fd[2 * k + 1] = perturbed(k, -1);
    }
    for (size_t c = 0; c < md.contacts.size(); ++c) {
      if (md.contacts[c].activity.v < 1e-3) continue;
      // depth and the fused position
      for (int q = 0; q < 4; ++q) {
        auto pick = [&](const ContactPoint& p) { return q == 0 ? p.depth : p.position[q - 1]; };
        const D& val = q == 0 ? md.contacts[c].depth : md.contacts[c].position[q - 1];
        double err = 0.0, mag = 0.0;
        for (int k = 0; k < 6; ++k) {
          const double f = (pick(fd[2 * k].contacts[c]) - pick(fd[2 * k + 1].contacts[c])) / (2 * h);
          err = std::max(err, std::fabs(val.d[k] - f));
          mag = std::max(mag, std::fabs(f));
        }
        ++checked;
        ok += err <= 1e-3 * std::max(mag, 1e-3);
      }
    }
  }
  CHECK(checked > 100);
  CHECK(ok >= checked * 99 / 100);
}

TEST_CASE("full mode emits vertex and edge contacts") {
  const TriangleMesh m = box_mesh();
  ContactConfig cfg;
  cfg.mode = ManifoldMode::Full;
  const ContactManifold c = build_manifold(m, at({0, 0, 0.45}), floor_tree(), cfg, P);
  REQUIRE(c.contacts.size() == m.vertices.size() + m.edges.size());
  int verts = 0, active_verts = 0;
  for (const auto& k : c.contacts) {
    CHECK(k.n_weights == 1);
    CHECK(J(k.jacobian, 0, 0) == doctest::Approx(k.activity).epsilon(1e-15));
    if (k.kind != ContactKind::Vertex) continue;
    ++verts;
    if (k.activity > 0.5) {
      ++active_verts;
      CHECK(k.depth == doctest::Approx(-0.05).epsilon(1e-12));
    }
  }
  CHECK(verts == 8);
  CHECK(active_verts == 4);
}

TEST_CASE("manifold input validation") {
  const TriangleMesh m = box_mesh();
  ContactConfig cfg;
  cfg.iters = 0;
  CHECK_THROWS_AS(build_manifold(m, Pose{}, floor_tree(), cfg, P), Error);
  CHECK_THROWS_AS(build_manifold(TriangleMesh{}, Pose{}, floor_tree(), ContactConfig{}, P), Error);
  Pose bad;
  bad.t.x = NAN;
  CHECK_THROWS_AS(build_manifold(m, bad, floor_tree(), ContactConfig{}, P), Error);
}
