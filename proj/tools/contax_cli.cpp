// contax command line: SDF queries, spline projection, manifolds, benchmarks
// and grid export.

#include <bit>
#include <cstdint>
#include <optional>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "contax/batch.hpp"
#include "contax/error.hpp"
#include "contax/log.hpp"
#include "contax/scene.hpp"
#include "contax/spline.hpp"
#include "json.hpp"

using namespace contax;
using nlohmann::json;

namespace {

json vec_json(const Vec3d& v) { return json::array({v.x, v.y, v.z}); }

Scene open_scene(const std::string& path) {
  Scene s = load_scene(path);
  if (verbose()) {
    for (const auto& b : s.bodies) {
      if (b.is_mesh())
        std::cerr << b.name << " (" << b.mesh_path << "): " << summary_text(summarize(*b.mesh)) << "\n";
      else
        std::cerr << b.name << ": sdf body, " << leaf_count(*b.geometry) << " leaf primitive(s)\n";
    }
  }
  return s;
}

const GeometryTree& sdf_body(const Scene& s, const std::string& name) {
  const Body& b = s.body(name);
  if (!b.geometry) throw Error(ErrorKind::InvalidParameter, "body '" + name + "' is a mesh, not an SDF body");
  return *b.geometry;
}

std::vector<double> parse_reals(const std::string& text, const std::string& what) {
  std::string t = text;
  for (char& c : t)
    if (c == ',') c = ' ';
  std::istringstream in(t);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') throw Error(ErrorKind::Parse, what + ": not a number: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

int cmd_sdf_eval(const std::string& scene_path, const std::string& body, const std::string& points) {
  const Scene s = open_scene(scene_path);
  const GeometryTree& tree = sdf_body(s, body);
  std::ifstream file;
  std::istream* in = &std::cin;
  if (points != "-") {
    file.open(points);
    if (!file) throw Error(ErrorKind::Io, "cannot open points file '" + points + "'");
    in = &file;
  }
  std::string line;
  int lineno = 0;
  char buf[256];
  while (std::getline(*in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    const auto v = parse_reals(line, points + ":" + std::to_string(lineno));
    if (v.empty()) continue;
    if (v.size() != 3) throw Error(ErrorKind::Parse, points + ":" + std::to_string(lineno) + ": expected 3 coordinates");
    const Vec3d x{v[0], v[1], v[2]};
    const auto [phi, g] = tree_sdf_grad(tree, x, s.smoothing);
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.17g %.17g %.17g\n", x.x, x.y, x.z, phi, g.x, g.y, g.z);
    std::cout << buf;
  }
  return 0;
}

int cmd_project(const std::vector<double>& spline, const std::vector<double>& point, const SmoothParams& params) {
  const QuadSpline sp{{spline[0], spline[1], spline[2]}, {spline[3], spline[4], spline[5]}, {spline[6], spline[7], spline[8]}};
  const Vec3d x{point[0], point[1], point[2]};
  const CubicSolution sol = project_point(sp, x, params);
  json out;
  out["coefficients"] = projection_cubic(sp, x);
  out["delta"] = sol.delta;
  out["delta_normalized"] = sol.delta_n;
  out["w_one_root"] = sol.w_neg;
  out["w_three_roots"] = sol.w_pos;
  json roots = json::array();
  for (int i = 0; i < 3; ++i) {
    const Vec3d p = spline_eval(sp, sol.t[i]);
    roots.push_back({{"t", sol.t[i]}, {"point", vec_json(p)}, {"distance", norm(x - p)}});
  }
  out["roots"] = roots;
  std::cout << out.dump(2) << "\n";
  return 0;
}

json contact_json(const ContactManifold& m, const ContactPoint& c) {
  static const char* kinds[] = {"face", "vertex", "edge"};
  json j;
  j["body_a"] = m.body_a;
  j["body_b"] = m.body_b;
  j["kind"] = kinds[static_cast<int>(c.kind)];
  j["index"] = c.index;
  j["position"] = vec_json(c.position);
  j["depth"] = c.depth;
  j["normal"] = vec_json(c.normal);
  j["activity"] = c.activity;
  j["weights"] = std::vector<double>(c.weights.begin(), c.weights.begin() + c.n_weights);
  j["jacobian"] = c.jacobian;
  return j;
}

int cmd_manifold(const std::string& scene_path, const std::string& pair, const std::string& mode, int iters,
                 const std::string& format, double min_activity) {
  const Scene s = open_scene(scene_path);
  const auto comma = pair.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::InvalidParameter, "--pair expects MESH_BODY,SDF_BODY");
  const std::string a = pair.substr(0, comma), b = pair.substr(comma + 1);
  const Body& ba = s.body(a);
  if (!ba.is_mesh()) throw Error(ErrorKind::InvalidParameter, "body '" + a + "' is not a mesh body");
  const GeometryTree& tree = sdf_body(s, b);
  ContactConfig cfg = s.contact;
  if (!mode.empty()) cfg.mode = mode == "full" ? ManifoldMode::Full : ManifoldMode::Reduced;
  if (iters > 0) cfg.iters = iters;
  ContactManifold m = build_manifold(*ba.mesh, ba.pose, tree, cfg, s.smoothing);
  m.body_a = a;
  m.body_b = b;
  if (m.multi_crossing_edges > 0)
    log_warning(std::to_string(m.multi_crossing_edges) +
                " edge(s) cross the SDF more than once; refine the mesh for accurate midpoints");

  if (format == "jsonl") {
    for (const auto& c : m.contacts)
      if (c.activity >= min_activity) std::cout << contact_json(m, c).dump() << "\n";
  } else {
    json doc;
    doc["body_a"] = a;
    doc["body_b"] = b;
    doc["mode"] = cfg.mode == ManifoldMode::Full ? "full" : "reduced";
    doc["iters"] = cfg.iters;
    doc["multi_crossing_edges"] = m.multi_crossing_edges;
    doc["active_contacts"] = m.active_count();
    json cs = json::array();
    for (const auto& c : m.contacts)
      if (c.activity >= min_activity) cs.push_back(contact_json(m, c));
    doc["contacts"] = cs;
    std::cout << doc.dump(2) << "\n";
  }
  return 0;
}

int cmd_bench(const std::string& scene_path, const std::string& out_path, std::optional<std::uint64_t> seed) {
  const Scene s = open_scene(scene_path);
  const std::uint64_t sd = seed ? *seed : s.benchmark.seed;
  const auto records = bench(s, sd);
  std::ofstream f;
  std::ostream* os = &std::cout;
  if (!out_path.empty() && out_path != "-") {
    f.open(out_path);
    if (!f) throw Error(ErrorKind::Io, "cannot write '" + out_path + "'");
    os = &f;
  }
  *os << "# seed=" << sd << " threads=" << worker_count() << " lanes=" << kBatchLanes << "\n";
  write_bench_csv(*os, records);
  if (os != &std::cout) {
    char buf[160];
    std::printf("%10s %10s %14s %14s %14s\n", "complexity", "batch", "median_s/item", "min_s/item", "max_s/item");
    for (const auto& r : summarize_bench(records)) {
      std::snprintf(buf, sizeof buf, "%10d %10d %14.4e %14.4e %14.4e\n", r.complexity, r.batch_size,
                    r.median_per_item, r.min_per_item, r.max_per_item);
      std::cout << buf;
    }
  }
  return 0;
}

int cmd_sample_grid(const std::string& scene_path, const std::string& body, const std::string& res_text,
                    const std::string& bounds_text, const std::string& out_path) {
  const Scene s = open_scene(scene_path);
  const GeometryTree& tree = sdf_body(s, body);
  const auto rv = parse_reals(res_text, "--res");
  if (rv.size() != 1 && rv.size() != 3) throw Error(ErrorKind::InvalidParameter, "--res expects N or NX,NY,NZ");
  std::uint32_t n[3];
  for (int k = 0; k < 3; ++k) {
    const double r = rv.size() == 1 ? rv[0] : rv[k];
    if (r < 2 || r != static_cast<std::uint32_t>(r) || r > 4096)
      throw Error(ErrorKind::InvalidParameter, "--res: need integers in [2, 4096] per axis");
    n[k] = static_cast<std::uint32_t>(r);
  }
  const auto bv = parse_reals(bounds_text, "--bounds");
  if (bv.size() != 6) throw Error(ErrorKind::InvalidParameter, "--bounds expects XMIN,YMIN,ZMIN,XMAX,YMAX,ZMAX");
  const double lo[3] = {bv[0], bv[1], bv[2]}, hi[3] = {bv[3], bv[4], bv[5]};
  for (int k = 0; k < 3; ++k)
    if (!(lo[k] < hi[k])) throw Error(ErrorKind::InvalidInterval, "--bounds: min must be below max on every axis");

  const std::size_t total = std::size_t(n[0]) * n[1] * n[2];
  std::vector<float> phi(total);
  std::vector<Vec3d> pts(total);
  for (std::uint32_t i = 0; i < n[0]; ++i)
    for (std::uint32_t j = 0; j < n[1]; ++j)
      for (std::uint32_t k = 0; k < n[2]; ++k) {
        const std::size_t id = (std::size_t(i) * n[1] + j) * n[2] + k;
        pts[id] = {lo[0] + (hi[0] - lo[0]) * i / (n[0] - 1), lo[1] + (hi[1] - lo[1]) * j / (n[1] - 1),
                   lo[2] + (hi[2] - lo[2]) * k / (n[2] - 1)};
      }
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (std::size_t id = 0; id < total; ++id) phi[id] = static_cast<float>(tree_sdf(tree, pts[id], s.smoothing));

  const bool csv = out_path.size() >= 4 && out_path.compare(out_path.size() - 4, 4, ".csv") == 0;
  std::ofstream f(out_path, csv ? std::ios::out : std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cannot write '" + out_path + "'");
  if (csv) {
    f << "x,y,z,phi\n";
    f.precision(9);
    for (std::size_t id = 0; id < total; ++id)
      f << pts[id].x << ',' << pts[id].y << ',' << pts[id].z << ',' << phi[id] << '\n';
  } else {
    static_assert(std::endian::native == std::endian::little, "grid writer assumes a little-endian host");
    f.write("CXGRID1\0", 8);
    f.write(reinterpret_cast<const char*>(n), sizeof n);
    f.write(reinterpret_cast<const char*>(lo), sizeof lo);
    f.write(reinterpret_cast<const char*>(hi), sizeof hi);
    f.write(reinterpret_cast<const char*>(phi.data()), std::streamsize(total * sizeof(float)));
  }
  if (!f) throw Error(ErrorKind::Io, "write failed for '" + out_path + "'");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"contax: smooth SDF collision kernels and contact manifolds"};
  app.require_subcommand(1);
  bool verbose_flag = false, quiet = false;
  app.add_flag("-v,--verbose", verbose_flag, "Print mesh and scene summaries to stderr");
  app.add_flag("-q,--quiet", quiet, "Suppress warnings");

  std::string scene, body, points = "-";
  auto* sdf = app.add_subcommand("sdf-eval", "Evaluate phi and its gradient at points (x y z per line)");
  sdf->add_option("scene", scene, "Scene file")->required();
  sdf->add_option("--body", body, "SDF body name")->required();
  sdf->add_option("--points", points, "Points file, or - for stdin");

  std::string spline_text, point_text;
  SmoothParams proj_params;
  auto* proj = app.add_subcommand("project", "Project a point onto a quadratic spline");
  proj->add_option("--spline", spline_text, "p1 p2 p3 as 9 reals (comma or space separated)")->required();
  proj->add_option("--point", point_text, "Query point as 3 reals")->required();
  proj->add_option("--tau-clip", proj_params.tau_clip, "Clip temperature");

  std::string pair, mode, format = "jsonl";
  int iters = 0;
  double min_activity = 0.0;
  auto* man = app.add_subcommand("manifold", "Build the contact manifold of a mesh body against an SDF body");
  man->add_option("scene", scene, "Scene file")->required();
  man->add_option("--pair", pair, "MESH_BODY,SDF_BODY")->required();
  man->add_option("--mode", mode, "full or reduced (default from the scene)")->check(CLI::IsMember({"full", "reduced"}));
  man->add_option("--iters", iters, "Sphere-trace iterations (default from the scene)")->check(CLI::PositiveNumber);
  man->add_option("--format", format, "jsonl or json")->check(CLI::IsMember({"jsonl", "json"}));
  man->add_option("--min-activity", min_activity, "Only print contacts with activity at or above this");

  std::string out;
  std::optional<std::uint64_t> seed;
  auto* bn = app.add_subcommand("bench", "Run the scene's throughput benchmark and write CSV");
  bn->add_option("scene", scene, "Scene file")->required();
  bn->add_option("--out", out, "CSV output path (default stdout)");
  bn->add_option("--seed", seed, "Random pose seed (default from the scene)");

  std::string res = "64", bounds;
  auto* grid = app.add_subcommand("sample-grid", "Sample phi on a regular grid (binary, or CSV for *.csv)");
  grid->add_option("scene", scene, "Scene file")->required();
  grid->add_option("--body", body, "SDF body name")->required();
  grid->add_option("--res", res, "N or NX,NY,NZ (>= 2)");
  grid->add_option("--bounds", bounds, "XMIN,YMIN,ZMIN,XMAX,YMAX,ZMAX")->required();
  grid->add_option("--out", out, "Output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  set_verbose(verbose_flag);
  set_quiet(quiet);

  try {
    if (*sdf) return cmd_sdf_eval(scene, body, points);
    if (*proj) {
      const auto sv = parse_reals(spline_text, "--spline");
      const auto pv = parse_reals(point_text, "--point");
      if (sv.size() != 9) throw Error(ErrorKind::InvalidParameter, "--spline expects 9 reals");
      if (pv.size() != 3) throw Error(ErrorKind::InvalidParameter, "--point expects 3 reals");
      proj_params.validate();
      return cmd_project(sv, pv, proj_params);
    }
    if (*man) return cmd_manifold(scene, pair, mode, iters, format, min_activity);
    if (*bn) return cmd_bench(scene, out, seed);
    if (*grid) return cmd_sample_grid(scene, body, res, bounds, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
