#include "contax/mesh.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "contax/error.hpp"
#include "contax/log.hpp"

namespace contax {

namespace {

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

[[noreturn]] void parse_fail(const std::string& name, int line, const std::string& msg) {
  throw Error(ErrorKind::Parse, name + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool to_double(std::string_view s, double& out) {
  auto r = std::from_chars(s.data(), s.data() + s.size(), out);
  return r.ec == std::errc() && r.ptr == s.data() + s.size() && std::isfinite(out);
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// Merges vertices closer than eps; returns the index map into the compacted list.
std::vector<int> weld(std::vector<Vec3d>& verts, double eps) {
  const int n = static_cast<int>(verts.size());
  std::unordered_map<std::uint64_t, std::vector<int>> grid;
  auto cell = [&](double v) { return static_cast<std::int64_t>(std::floor(v / eps)); };
  auto key = [](std::int64_t x, std::int64_t y, std::int64_t z) {
    return (static_cast<std::uint64_t>(x & 0x1fffff) << 42) | (static_cast<std::uint64_t>(y & 0x1fffff) << 21) |
           static_cast<std::uint64_t>(z & 0x1fffff);
  };
  std::vector<int> map(n);
  std::vector<Vec3d> kept;
  for (int i = 0; i < n; ++i) {
    const Vec3d& v = verts[i];
    const std::int64_t cx = cell(v.x), cy = cell(v.y), cz = cell(v.z);
    int found = -1;
    for (int dx = -1; dx <= 1 && found < 0; ++dx)
      for (int dy = -1; dy <= 1 && found < 0; ++dy)
        for (int dz = -1; dz <= 1 && found < 0; ++dz) {
          auto it = grid.find(key(cx + dx, cy + dy, cz + dz));
          if (it == grid.end()) continue;
          for (int k : it->second)
            if (norm(kept[k] - v) <= eps) {
              found = k;
              break;
            }
        }
    if (found < 0) {
      found = static_cast<int>(kept.size());
      kept.push_back(v);
      grid[key(cx, cy, cz)].push_back(found);
    }
    map[i] = found;
  }
  verts = std::move(kept);
  return map;
}

}  // namespace

TriangleMesh TriangleMesh::from_triangles(std::vector<Vec3d> vertices, const std::vector<std::array<int, 3>>& tris) {
  TriangleMesh m;
  m.vertices = std::move(vertices);
  const int nv = static_cast<int>(m.vertices.size());
  std::unordered_map<std::uint64_t, int> edge_index;
  for (const auto& f : tris) {
    for (int k = 0; k < 3; ++k)
      if (f[k] < 0 || f[k] >= nv) throw Error(ErrorKind::Parse, "face references a missing vertex");
    const Vec3d& a = m.vertices[f[0]];
    const Vec3d& b = m.vertices[f[1]];
    const Vec3d& c = m.vertices[f[2]];
    const Vec3d cr = cross(b - a, c - a);
    const double scale = std::max({dot(b - a, b - a), dot(c - a, c - a), dot(c - b, c - b)});
    const double area2 = norm(cr);
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2] || !(area2 > 1e-12 * scale)) {
      ++m.dropped_faces;
      continue;
    }
    std::array<int, 3> fe{};
    for (int k = 0; k < 3; ++k) {
      const int u = f[k], v = f[(k + 1) % 3];
      auto [it, inserted] = edge_index.try_emplace(edge_key(u, v), static_cast<int>(m.edges.size()));
      if (inserted) m.edges.push_back({std::min(u, v), std::max(u, v)});
      fe[k] = it->second;
    }
    m.faces.push_back(f);
    m.face_edges.push_back(fe);
    m.face_normals.push_back(cr / area2);
  }
  return m;
}

TriangleMesh parse_obj(std::istream& in, const std::string& name, double weld_eps) {
  std::vector<Vec3d> verts;
  std::vector<std::array<int, 3>> tris;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv(line);
    const auto hash = sv.find('#');
    if (hash != std::string_view::npos) sv = sv.substr(0, hash);
    const auto tok = tokens(sv);
    if (tok.empty()) continue;
    if (tok[0] == "v") {
      if (tok.size() < 4) parse_fail(name, lineno, "vertex needs 3 coordinates");
      Vec3d v;
      for (int k = 0; k < 3; ++k)
        if (!to_double(tok[k + 1], v[k])) parse_fail(name, lineno, "bad vertex coordinate '" + std::string(tok[k + 1]) + "'");
      verts.push_back(v);
    } else if (tok[0] == "f") {
      if (tok.size() < 4) parse_fail(name, lineno, "face needs at least 3 vertices");
      std::vector<int> idx;
      for (size_t k = 1; k < tok.size(); ++k) {
        const std::string_view t = tok[k].substr(0, tok[k].find('/'));
        long v = 0;
        auto r = std::from_chars(t.data(), t.data() + t.size(), v);
        if (r.ec != std::errc() || r.ptr != t.data() + t.size()) parse_fail(name, lineno, "bad face index '" + std::string(tok[k]) + "'");
        if (v < 0) parse_fail(name, lineno, "negative face indices are not supported");
        if (v == 0 || v > static_cast<long>(verts.size())) parse_fail(name, lineno, "face index " + std::to_string(v) + " out of range");
        idx.push_back(static_cast<int>(v - 1));
      }
      for (size_t k = 1; k + 1 < idx.size(); ++k) tris.push_back({idx[0], idx[k], idx[k + 1]});
    }
  }
  if (verts.empty()) throw Error(ErrorKind::EmptyInput, name + ": mesh has no vertices");
  if (weld_eps > 0.0) {
    const auto map = weld(verts, weld_eps);
    for (auto& f : tris)
      for (int& i : f) i = map[i];
  }
  TriangleMesh m = TriangleMesh::from_triangles(std::move(verts), tris);
  if (m.dropped_faces > 0) log_warning(name + ": dropped " + std::to_string(m.dropped_faces) + " zero-area face(s)");
  return m;
}

TriangleMesh load_obj(const std::string& path, double weld_eps) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open mesh file '" + path + "'");
  return parse_obj(in, path, weld_eps);
}

Edge edge_param(const TriangleMesh& mesh, int edge_index) {
  if (edge_index < 0 || edge_index >= static_cast<int>(mesh.edges.size()))
    throw Error(ErrorKind::InvalidParameter, "edge index out of range");
  const auto& e = mesh.edges[edge_index];
  Edge out;
  out.v_I = mesh.vertices[e[0]];
  out.v_II = mesh.vertices[e[1]];
  const Vec3d d = out.v_II - out.v_I;
  out.L = norm(d);
  if (!(out.L > 0.0)) throw Error(ErrorKind::DegenerateEdge, "edge " + std::to_string(edge_index) + " has coincident endpoints");
  out.e_t = d / out.L;
  return out;
}

MeshSummary summarize(const TriangleMesh& mesh) {
  MeshSummary s;
  s.faces = static_cast<int>(mesh.faces.size());
  s.edges = static_cast<int>(mesh.edges.size());
  s.dropped_faces = mesh.dropped_faces;
  const int nv = static_cast<int>(mesh.vertices.size());
  std::vector<char> used(nv, 0);
  UnionFind uf(nv);
  for (const auto& f : mesh.faces) {
    for (int k = 0; k < 3; ++k) used[f[k]] = 1;
    uf.unite(f[0], f[1]);
    uf.unite(f[1], f[2]);
  }
  std::vector<int> edge_faces(mesh.edges.size(), 0);
  for (const auto& fe : mesh.face_edges)
    for (int e : fe) ++edge_faces[e];
  s.closed_manifold = !mesh.edges.empty();
  for (int c : edge_faces)
    if (c != 2) s.closed_manifold = false;

  std::unordered_map<int, int> comp_id;
  std::vector<std::array<int, 3>> counts;
  auto comp = [&](int v) {
    auto [it, ins] = comp_id.try_emplace(uf.find(v), static_cast<int>(counts.size()));
    if (ins) counts.push_back({0, 0, 0});
    return it->second;
  };
  for (int v = 0; v < nv; ++v)
    if (used[v]) {
      ++s.vertices;
      ++counts[comp(v)][0];
    }
  for (const auto& e : mesh.edges) ++counts[comp(e[0])][1];
  for (const auto& f : mesh.faces) ++counts[comp(f[0])][2];
  s.components = static_cast<int>(counts.size());
  for (const auto& c : counts) s.component_euler.push_back(c[0] - c[1] + c[2]);
  s.euler = s.vertices - s.edges + s.faces;
  return s;
}

std::string summary_text(const MeshSummary& s) {
  std::ostringstream os;
  os << "V=" << s.vertices << " E=" << s.edges << " F=" << s.faces << " V-E+F=" << s.euler
     << " components=" << s.components << " closed=" << (s.closed_manifold ? "yes" : "no");
  if (s.dropped_faces) os << " dropped_faces=" << s.dropped_faces;
  return os.str();
}

}  // namespace contax
