#include "contax/scene.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "contax/error.hpp"
#include "contax/log.hpp"
#include "json.hpp"

namespace contax {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg, ErrorKind kind = ErrorKind::Parse) {
  throw Error(kind, path + ": " + msg);
}

std::string sub(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string idx(const std::string& path, size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& need(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(sub(path, key), "missing required field");
  return *it;
}

double num(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite", ErrorKind::NonFiniteInput);
  return v;
}

double num_or(const json& j, const std::string& path, const char* key, double dflt) {
  auto it = j.find(key);
  return it == j.end() ? dflt : num(*it, sub(path, key));
}

int int_or(const json& j, const std::string& path, const char* key, int dflt) {
  auto it = j.find(key);
  if (it == j.end()) return dflt;
  if (!it->is_number_integer()) fail(sub(path, key), "expected an integer");
  return it->get<int>();
}

std::vector<double> nums(const json& j, const std::string& path, size_t n) {
  if (!j.is_array() || j.size() != n) fail(path, "expected an array of " + std::to_string(n) + " numbers");
  std::vector<double> out;
  for (size_t i = 0; i < n; ++i) out.push_back(num(j[i], idx(path, i)));
  return out;
}

Vec3d vec3(const json& j, const std::string& path) {
  const auto v = nums(j, path, 3);
  return {v[0], v[1], v[2]};
}

std::array<double, 4> row4(const json& j, const std::string& path) {
  const auto v = nums(j, path, 4);
  return {v[0], v[1], v[2], v[3]};
}

// Either a single value (constant schedule) or [value_at_0, value_at_1].
std::array<double, 2> sched(const json& j, const std::string& path) {
  if (j.is_number()) {
    const double v = num(j, path);
    return {v, v};
  }
  const auto v = nums(j, path, 2);
  return {v[0], v[1]};
}

std::array<Vec3d, 2> sched3(const json& j, const std::string& path) {
  if (j.is_array() && j.size() == 3 && j[0].is_number()) {
    const Vec3d v = vec3(j, path);
    return {v, v};
  }
  if (!j.is_array() || j.size() != 2) fail(path, "expected [x,y,z] or [[x,y,z],[x,y,z]]");
  return {vec3(j[0], idx(path, 0)), vec3(j[1], idx(path, 1))};
}

Pose pose_of(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  Vec3d t{};
  if (auto it = j.find("translation"); it != j.end()) t = vec3(*it, sub(path, "translation"));
  std::vector<double> q{1.0, 0.0, 0.0, 0.0};
  if (auto it = j.find("rotation"); it != j.end()) q = nums(*it, sub(path, "rotation"), 4);
  try {
    return Pose::from_quaternion(q[0], q[1], q[2], q[3], t);
  } catch (const Error& e) {
    fail(path, e.what(), e.kind());
  }
}

Superquadric sq_of(const json& j, const std::string& path) {
  const double e1 = num(need(j, path, "eps1"), sub(path, "eps1"));
  const double e2 = num(need(j, path, "eps2"), sub(path, "eps2"));
  const Vec3d a = vec3(need(j, path, "scale"), sub(path, "scale"));
  if (e1 < kEpsMin || e1 > kEpsMax || e2 < kEpsMin || e2 > kEpsMax)
    log_warning(path + ": eps outside [0.1, 2] is clamped");
  try {
    return Superquadric(e1, e2, a);
  } catch (const Error& e) {
    fail(path, e.what(), e.kind());
  }
}

template <class F>
void guarded(const std::string& path, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    fail(path, e.what(), e.kind());
  }
}

GeometryTree node_of(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a geometry node object");
  const json& kj = need(j, path, "kind");
  if (!kj.is_string()) fail(sub(path, "kind"), "expected a string");
  const std::string kind = kj.get<std::string>();
  GeometryTree t;
  if (auto it = j.find("pose"); it != j.end()) t.pose = pose_of(*it, sub(path, "pose"));

  if (kind == "halfspace") {
    HalfSpace h;
    h.n = vec3(need(j, path, "normal"), sub(path, "normal"));
    h.h = num(need(j, path, "offset"), sub(path, "offset"));
    guarded(path, [&] { h.validate(); });
    t.node = h;
  } else if (kind == "superquadric") {
    t.node = sq_of(j, path);
  } else if (kind == "psq") {
    PSQ p;
    p.sq = sq_of(j, path);
    if (auto it = j.find("planes"); it != j.end()) {
      if (!it->is_array()) fail(sub(path, "planes"), "expected an array of [nx,ny,nz,h] rows");
      for (size_t i = 0; i < it->size(); ++i) p.planes.push_back(row4((*it)[i], idx(sub(path, "planes"), i)));
    }
    guarded(path, [&] { p.validate(); });
    t.node = p;
  } else if (kind == "xpsq") {
    XPSQ x;
    const json& sp = need(j, path, "spline");
    const std::string spath = sub(path, "spline");
    if (!sp.is_array() || sp.size() != 3) fail(spath, "expected 3 control points");
    x.spline = {vec3(sp[0], idx(spath, 0)), vec3(sp[1], idx(spath, 1)), vec3(sp[2], idx(spath, 2))};
    if (auto it = j.find("up"); it != j.end()) x.up = vec3(*it, sub(path, "up"));
    x.eps1 = sched(need(j, path, "eps1"), sub(path, "eps1"));
    x.eps2 = sched(need(j, path, "eps2"), sub(path, "eps2"));
    x.scale = sched3(need(j, path, "scale"), sub(path, "scale"));
    if (auto it = j.find("planes"); it != j.end()) {
      const std::string ppath = sub(path, "planes");
      if (!it->is_array()) fail(ppath, "expected an array of plane schedules");
      for (size_t i = 0; i < it->size(); ++i) {
        const json& r = (*it)[i];
        const std::string rpath = idx(ppath, i);
        if (r.is_array() && r.size() == 4 && r[0].is_number()) {
          const auto v = row4(r, rpath);
          x.planes.push_back({v, v});
        } else if (r.is_array() && r.size() == 2) {
          x.planes.push_back({row4(r[0], idx(rpath, 0)), row4(r[1], idx(rpath, 1))});
        } else {
          fail(rpath, "expected [nx,ny,nz,h] or [[nx,ny,nz,h],[nx,ny,nz,h]]");
        }
      }
    }
    guarded(path, [&] { x.validate(); });
    t.node = x;
  } else if (kind == "union" || kind == "intersection" || kind == "subtraction") {
    Combine c;
    c.op = kind == "union" ? CombineOp::Union : kind == "intersection" ? CombineOp::Intersection : CombineOp::Subtraction;
    const json& ch = need(j, path, "children");
    const std::string cpath = sub(path, "children");
    if (!ch.is_array()) fail(cpath, "expected an array");
    for (size_t i = 0; i < ch.size(); ++i) c.children.push_back(node_of(ch[i], idx(cpath, i)));
    const size_t n = c.children.size();
    if (c.op == CombineOp::Subtraction ? n != 2 : n < 2)
      fail(cpath, kind == "subtraction" ? "subtraction takes exactly 2 children" : kind + " takes at least 2 children",
           ErrorKind::Arity);
    if (n > static_cast<size_t>(kMaxFanIn))
      fail(cpath, "at most " + std::to_string(kMaxFanIn) + " children", ErrorKind::Arity);
    t.node = std::move(c);
  } else {
    fail(sub(path, "kind"), "unknown node kind '" + kind + "'");
  }
  return t;
}

}  // namespace

const Body& Scene::body(const std::string& name) const {
  for (const auto& b : bodies)
    if (b.name == name) return b;
  throw Error(ErrorKind::UnknownBody, "unknown body '" + name + "'");
}

Scene parse_scene(const std::string& text, const std::string& base_dir, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, origin + ": " + e.what());
  }
  if (!root.is_object()) fail(origin, "top level must be an object");

  Scene s;
  s.path = origin;
  if (auto it = root.find("smoothing"); it != root.end()) {
    s.smoothing.tau_cmp = num_or(*it, "smoothing", "tau_cmp", s.smoothing.tau_cmp);
    s.smoothing.tau_min = num_or(*it, "smoothing", "tau_min", s.smoothing.tau_min);
    s.smoothing.tau_clip = num_or(*it, "smoothing", "tau_clip", s.smoothing.tau_clip);
  }
  s.smoothing.validate();

  if (auto it = root.find("contact"); it != root.end()) {
    const json& c = *it;
    if (auto m = c.find("mode"); m != c.end()) {
      const std::string mode = m->is_string() ? m->get<std::string>() : "";
      if (mode == "full")
        s.contact.mode = ManifoldMode::Full;
      else if (mode == "reduced")
        s.contact.mode = ManifoldMode::Reduced;
      else
        fail("contact.mode", "expected \"full\" or \"reduced\"");
    }
    s.contact.iters = int_or(c, "contact", "iters", s.contact.iters);
    if (s.contact.iters < 1) fail("contact.iters", "must be at least 1", ErrorKind::InvalidParameter);
    if (auto d = c.find("depth"); d != c.end()) {
      const std::string depth = d->is_string() ? d->get<std::string>() : "";
      if (depth == "smooth_min")
        s.contact.depth = DepthFusion::SmoothMin;
      else if (depth == "weighted")
        s.contact.depth = DepthFusion::Weighted;
      else
        fail("contact.depth", "expected \"smooth_min\" or \"weighted\"");
    }
  }

  const json& bodies = need(root, "", "bodies");
  if (!bodies.is_array()) fail("bodies", "expected an array");
  if (bodies.empty()) throw Error(ErrorKind::EmptyInput, "bodies: scene has no bodies");
  std::set<std::string> names;
  for (size_t i = 0; i < bodies.size(); ++i) {
    const json& bj = bodies[i];
    const std::string path = idx("bodies", i);
    Body b;
    const json& nj = need(bj, path, "name");
    if (!nj.is_string() || nj.get<std::string>().empty()) fail(sub(path, "name"), "expected a non-empty string");
    b.name = nj.get<std::string>();
    if (!names.insert(b.name).second) fail(sub(path, "name"), "duplicate body name '" + b.name + "'");
    if (auto it = bj.find("pose"); it != bj.end()) b.pose = pose_of(*it, sub(path, "pose"));
    const bool has_geom = bj.contains("geometry"), has_mesh = bj.contains("mesh");
    if (has_geom == has_mesh) fail(path, "a body needs exactly one of 'geometry' or 'mesh'");
    if (has_geom) {
      GeometryTree t = node_of(bj["geometry"], sub(path, "geometry"));
      t.pose = b.pose * t.pose;
      b.geometry = std::move(t);
    } else {
      const json& mj = bj["mesh"];
      const std::string mpath = sub(path, "mesh");
      const json& pj = need(mj, mpath, "path");
      if (!pj.is_string()) fail(sub(mpath, "path"), "expected a string");
      std::filesystem::path p(pj.get<std::string>());
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      b.mesh_path = p.string();
      const double weld = num_or(mj, mpath, "weld", 0.0);
      if (!std::filesystem::exists(p)) fail(sub(mpath, "path"), "mesh file not found: " + b.mesh_path, ErrorKind::Io);
      auto mesh = std::make_shared<TriangleMesh>(load_obj(b.mesh_path, weld));
      if (mesh->faces.empty()) fail(mpath, "mesh has no usable faces", ErrorKind::EmptyInput);
      b.mesh = std::move(mesh);
    }
    s.bodies.push_back(std::move(b));
  }

  if (auto it = root.find("benchmark"); it != root.end()) {
    const json& bj = *it;
    BenchmarkSettings& bs = s.benchmark;
    bs.present = true;
    const json& pair = need(bj, "benchmark", "pair");
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
      fail("benchmark.pair", "expected [mesh_body, sdf_body]");
    bs.mesh_body = pair[0].get<std::string>();
    bs.sdf_body = pair[1].get<std::string>();
    for (const auto& nm : {bs.mesh_body, bs.sdf_body})
      if (!names.count(nm)) fail("benchmark.pair", "unknown body '" + nm + "'", ErrorKind::UnknownBody);
    if (auto b = bj.find("batch_sizes"); b != bj.end()) {
      if (!b->is_array() || b->empty()) fail("benchmark.batch_sizes", "expected a non-empty array");
      bs.batch_sizes.clear();
      for (size_t i = 0; i < b->size(); ++i) {
        const json& v = (*b)[i];
        if (!v.is_number_integer() || v.get<long>() <= 0)
          fail(idx("benchmark.batch_sizes", i), "batch sizes must be positive integers", ErrorKind::InvalidParameter);
        bs.batch_sizes.push_back(v.get<int>());
      }
    }
    bs.trials = int_or(bj, "benchmark", "trials", bs.trials);
    bs.warmup = int_or(bj, "benchmark", "warmup", bs.warmup);
    if (bs.trials < 1) fail("benchmark.trials", "must be at least 1", ErrorKind::InvalidParameter);
    if (bs.warmup < 0) fail("benchmark.warmup", "must be non-negative", ErrorKind::InvalidParameter);
    if (auto c = bj.find("complexity"); c != bj.end()) {
      if (!c->is_array()) fail("benchmark.complexity", "expected an array of primitive counts");
      for (size_t i = 0; i < c->size(); ++i) {
        const json& v = (*c)[i];
        if (!v.is_number_integer() || v.get<long>() <= 0)
          fail(idx("benchmark.complexity", i), "complexity levels must be positive integers", ErrorKind::InvalidParameter);
        bs.complexity.push_back(v.get<int>());
      }
    }
    if (auto b = bj.find("translation_box"); b != bj.end()) {
      bs.box_min = vec3(need(*b, "benchmark.translation_box", "min"), "benchmark.translation_box.min");
      bs.box_max = vec3(need(*b, "benchmark.translation_box", "max"), "benchmark.translation_box.max");
      for (int k = 0; k < 3; ++k)
        if (bs.box_min[k] > bs.box_max[k])
          fail("benchmark.translation_box", "min must not exceed max", ErrorKind::InvalidInterval);
    }
    if (auto sd = bj.find("seed"); sd != bj.end()) {
      if (!sd->is_number_unsigned() && !(sd->is_number_integer() && sd->get<long>() >= 0))
        fail("benchmark.seed", "expected a non-negative integer");
      bs.seed = sd->get<std::uint64_t>();
    }
  }
  return s;
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open scene file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string dir = std::filesystem::path(path).parent_path().string();
  return parse_scene(ss.str(), dir.empty() ? "." : dir, path);
}

}  // namespace contax
