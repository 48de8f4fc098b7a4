#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <vector>

#include "contax/scene.hpp"

namespace contax {

struct PosePair {
  Pose mesh_pose;
  Pose sdf_pose;
};

// Worker threads for batch runs: OpenMP's maximum, capped by CONTAX_THREADS.
int worker_count();

// Lane width of the batched kernel.
inline constexpr int kBatchLanes = 8;

using ManifoldSink = std::function<void(std::size_t index, const ContactManifold& manifold)>;

// Item i is build_manifold(mesh, poses[i].mesh_pose, sdf placed at
// poses[i].sdf_pose). Results reach the sink in index order.
void run_batch(const TriangleMesh& mesh, const GeometryTree& sdf, const std::vector<PosePair>& poses,
               const ContactConfig& config, const SmoothParams& params, const ManifoldSink& sink);

std::vector<ContactManifold> run_batch(const TriangleMesh& mesh, const GeometryTree& sdf,
                                       const std::vector<PosePair>& poses, const ContactConfig& config,
                                       const SmoothParams& params);

// Uses the scene's contact and smoothing settings; names select the bodies.
std::vector<ContactManifold> run_batch(const Scene& scene, const std::string& mesh_body, const std::string& sdf_body,
                                       const std::vector<PosePair>& poses);

// Uniform translation in [lo, hi] and uniform rotation.
Pose random_pose(std::mt19937_64& rng, const Vec3d& lo, const Vec3d& hi);

struct BenchRecord {
  int complexity = 0;
  int batch_size = 0;
  int trial = 0;
  double total_seconds = 0.0;
  double per_item_seconds = 0.0;
  long active_contacts = 0;
};

struct BenchSummary {
  int complexity = 0;
  int batch_size = 0;
  double median_total = 0.0;
  double median_per_item = 0.0;
  double min_per_item = 0.0;
  double max_per_item = 0.0;
};

std::vector<BenchRecord> bench(const Scene& scene, std::uint64_t seed);
std::vector<BenchSummary> summarize_bench(const std::vector<BenchRecord>& records);
void write_bench_csv(std::ostream& os, const std::vector<BenchRecord>& records);

}  // namespace contax
