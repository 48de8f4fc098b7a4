#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "contax/vec.hpp"

namespace contax {

struct Edge {
  Vec3d v_I, v_II;
  Vec3d e_t;  // unit direction v_I -> v_II
  double L = 0.0;

  Vec3d at(double alpha) const { return v_I + e_t * alpha; }
};

struct TriangleMesh {
  std::vector<Vec3d> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<std::array<int, 2>> edges;       // smaller index first
  std::vector<std::array<int, 3>> face_edges;  // edges (v0,v1), (v1,v2), (v2,v0)
  std::vector<Vec3d> face_normals;
  int dropped_faces = 0;

  // Builds the topology tables from vertices and triangles. Zero-area
  // triangles are dropped and counted.
  static TriangleMesh from_triangles(std::vector<Vec3d> vertices, const std::vector<std::array<int, 3>>& tris);
};

struct MeshSummary {
  int vertices = 0, edges = 0, faces = 0;
  int components = 0;
  int euler = 0;                // V - E + F over referenced vertices
  bool closed_manifold = false;  // every edge shared by exactly two faces
  std::vector<int> component_euler;
  int dropped_faces = 0;
};

TriangleMesh parse_obj(std::istream& in, const std::string& name, double weld_eps = 0.0);
TriangleMesh load_obj(const std::string& path, double weld_eps = 0.0);

Edge edge_param(const TriangleMesh& mesh, int edge_index);
MeshSummary summarize(const TriangleMesh& mesh);
std::string summary_text(const MeshSummary& s);

}  // namespace contax
