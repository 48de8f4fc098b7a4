#include "contax/batch.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <ostream>

#include "contax/error.hpp"
#include "manifold_internal.hpp"

namespace contax {

int worker_count() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("CONTAX_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<long>(n, cap);
  }
  return std::max(1, n);
}

void run_batch(const TriangleMesh& mesh, const GeometryTree& sdf, const std::vector<PosePair>& poses,
               const ContactConfig& config, const SmoothParams& params, const ManifoldSink& sink) {
  if (poses.empty()) throw Error(ErrorKind::EmptyInput, "run_batch needs at least one pose pair");
  check_manifold_inputs(mesh, poses[0].mesh_pose, sdf, config, params);
  for (const auto& p : poses) {
    p.mesh_pose.validate();
    p.sdf_pose.validate();
  }
  constexpr int W = kBatchLanes;
  constexpr std::size_t kChunk = W * 64;
  const std::size_t n = poses.size();
  const int threads = worker_count();
  std::vector<ContactManifold> buf(std::min(n, kChunk));

  for (std::size_t start = 0; start < n; start += kChunk) {
    const std::size_t count = std::min(kChunk, n - start);
    const std::size_t full = count / W;
    // full packs go through the wide kernel, the tail item by item
    const std::size_t jobs = full + (count - full * W);
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
    for (std::size_t j = 0; j < jobs; ++j) {
      if (j < full) {
        manifold_pack<W>(mesh, sdf, &poses[start + j * W], W, config, params, &buf[j * W]);
      } else {
        const std::size_t i = full * W + (j - full);
        manifold_pack<1>(mesh, sdf, &poses[start + i], 1, config, params, &buf[i]);
      }
    }
    for (std::size_t i = 0; i < count; ++i) sink(start + i, buf[i]);
  }
}

std::vector<ContactManifold> run_batch(const TriangleMesh& mesh, const GeometryTree& sdf,
                                       const std::vector<PosePair>& poses, const ContactConfig& config,
                                       const SmoothParams& params) {
  std::vector<ContactManifold> out(poses.size());
  run_batch(mesh, sdf, poses, config, params, [&](std::size_t i, const ContactManifold& m) { out[i] = m; });
  return out;
}

std::vector<ContactManifold> run_batch(const Scene& scene, const std::string& mesh_body, const std::string& sdf_body,
                                       const std::vector<PosePair>& poses) {
  const Body& a = scene.body(mesh_body);
  const Body& b = scene.body(sdf_body);
  if (!a.is_mesh()) throw Error(ErrorKind::InvalidParameter, "body '" + mesh_body + "' is not a mesh body");
  if (!b.geometry) throw Error(ErrorKind::InvalidParameter, "body '" + sdf_body + "' is not an SDF body");
  auto out = run_batch(*a.mesh, *b.geometry, poses, scene.contact, scene.smoothing);
  for (auto& m : out) {
    m.body_a = mesh_body;
    m.body_b = sdf_body;
  }
  return out;
}

Pose random_pose(std::mt19937_64& rng, const Vec3d& lo, const Vec3d& hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec3d t;
  for (int i = 0; i < 3; ++i) t[i] = lo[i] + (hi[i] - lo[i]) * u(rng);
  const double u1 = u(rng), u2 = u(rng), u3 = u(rng);
  const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  const double tp = 2.0 * std::numbers::pi;
  return Pose::from_quaternion(b * std::cos(tp * u3), a * std::sin(tp * u2), a * std::cos(tp * u2),
                               b * std::sin(tp * u3), t);
}

std::vector<BenchRecord> bench(const Scene& scene, std::uint64_t seed) {
  const BenchmarkSettings& s = scene.benchmark;
  if (!s.present) throw Error(ErrorKind::InvalidParameter, "scene has no benchmark section");
  const Body& a = scene.body(s.mesh_body);
  const Body& b = scene.body(s.sdf_body);
  if (!a.is_mesh()) throw Error(ErrorKind::InvalidParameter, "benchmark.pair[0] must name a mesh body");
  if (!b.geometry) throw Error(ErrorKind::InvalidParameter, "benchmark.pair[1] must name an SDF body");

  std::vector<int> levels = s.complexity;
  if (levels.empty()) levels.push_back(leaf_count(*b.geometry));

  std::mt19937_64 rng(seed);
  std::vector<BenchRecord> records;
  for (int k : levels) {
    const GeometryTree tree = truncate_root(*b.geometry, k);
    const int complexity = leaf_count(tree);
    for (int batch : s.batch_sizes) {
      auto draw = [&] {
        std::vector<PosePair> poses(batch);
        for (auto& p : poses) {
          p.mesh_pose = random_pose(rng, s.box_min, s.box_max);
          p.sdf_pose = tree.pose;
        }
        return poses;
      };
      for (int w = 0; w < s.warmup; ++w)
        run_batch(*a.mesh, tree, draw(), scene.contact, scene.smoothing, [](std::size_t, const ContactManifold&) {});
      for (int t = 0; t < s.trials; ++t) {
        const auto poses = draw();
        long active = 0;
        const auto t0 = std::chrono::steady_clock::now();
        run_batch(*a.mesh, tree, poses, scene.contact, scene.smoothing,
                  [&](std::size_t, const ContactManifold& m) { active += m.active_count(); });
        const auto t1 = std::chrono::steady_clock::now();
        BenchRecord r;
        r.complexity = complexity;
        r.batch_size = batch;
        r.trial = t;
        r.total_seconds = std::chrono::duration<double>(t1 - t0).count();
        r.per_item_seconds = r.total_seconds / batch;
        r.active_contacts = active;
        records.push_back(r);
      }
    }
  }
  return records;
}

std::vector<BenchSummary> summarize_bench(const std::vector<BenchRecord>& records) {
  std::map<std::pair<int, int>, std::vector<const BenchRecord*>> groups;
  std::vector<std::pair<int, int>> order;
  for (const auto& r : records) {
    auto key = std::make_pair(r.complexity, r.batch_size);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  };
  std::vector<BenchSummary> out;
  for (const auto& key : order) {
    const auto& g = groups[key];
    std::vector<double> tot, per;
    for (const auto* r : g) {
      tot.push_back(r->total_seconds);
      per.push_back(r->per_item_seconds);
    }
    BenchSummary s;
    s.complexity = key.first;
    s.batch_size = key.second;
    s.median_total = median(tot);
    s.median_per_item = median(per);
    s.min_per_item = *std::min_element(per.begin(), per.end());
    s.max_per_item = *std::max_element(per.begin(), per.end());
    out.push_back(s);
  }
  return out;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  os << "complexity,batch_size,trial,total_seconds,per_item_seconds,active_contacts\n";
  os.precision(9);
  for (const auto& r : records)
    os << r.complexity << ',' << r.batch_size << ',' << r.trial << ',' << r.total_seconds << ',' << r.per_item_seconds
       << ',' << r.active_contacts << '\n';
}

}  // namespace contax
