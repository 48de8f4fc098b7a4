#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "contax/contact.hpp"

namespace contax {

struct Body {
  std::string name;
  Pose pose;
  std::optional<GeometryTree> geometry;  // SDF body; geometry->pose includes the body pose
  std::shared_ptr<const TriangleMesh> mesh;
  std::string mesh_path;

  bool is_mesh() const { return static_cast<bool>(mesh); }
};

struct BenchmarkSettings {
  bool present = false;
  std::string mesh_body, sdf_body;
  std::vector<int> batch_sizes{1, 16, 256, 4096};
  int trials = 5;
  int warmup = 2;
  std::vector<int> complexity;  // empty: the full SDF body only
  Vec3d box_min{-0.5, -0.5, -0.5};
  Vec3d box_max{0.5, 0.5, 0.5};
  std::uint64_t seed = 0;
};

struct Scene {
  std::string path;
  SmoothParams smoothing;
  ContactConfig contact;
  std::vector<Body> bodies;
  BenchmarkSettings benchmark;

  // Throws UnknownBody.
  const Body& body(const std::string& name) const;
};

// Mesh paths are resolved relative to base_dir.
Scene parse_scene(const std::string& text, const std::string& base_dir, const std::string& origin = "<scene>");
Scene load_scene(const std::string& path);

}  // namespace contax
