#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace beltrami {

enum class MeshFormat { Off, Obj };

// Indexed triangle mesh. Immutable after construction (build through
// finalize_mesh / load_mesh); safe to share across threads.
struct Mesh {
  Eigen::Matrix<double, Eigen::Dynamic, 3> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<std::uint8_t> boundary;  // 1 iff vertex lies on an edge with exactly one face

  int vertex_count() const { return static_cast<int>(vertices.rows()); }
  int face_count() const { return static_cast<int>(faces.size()); }
  Eigen::Vector3d vertex(int v) const { return vertices.row(v).transpose(); }

  int boundary_vertex_count() const;
  bool closed() const { return boundary_vertex_count() == 0; }
  int edge_count() const;
  int euler_characteristic() const;
  double face_area(int f) const;
  double surface_area() const;
};

struct LoadResult {
  Mesh mesh;
  int dropped_faces = 0;  // degenerate faces removed during finalization
};

// Validates raw geometry: drops degenerate faces (repeated indices or zero
// area), rejects out-of-range indices (ParseError), empty meshes (EmptyMesh)
// and edges bordered by more than two faces (NonManifold), then fills
// boundary flags.
LoadResult finalize_mesh(Eigen::Matrix<double, Eigen::Dynamic, 3> vertices,
                         std::vector<std::array<int, 3>> faces);

LoadResult load_mesh(const std::string& path, MeshFormat format);
LoadResult load_mesh(const std::string& path);  // format inferred from extension

// Full-precision ASCII output; OFF round-trips bit-exactly.
void save_mesh_off(const Mesh& mesh, const std::string& path);
void save_mesh_obj(const Mesh& mesh, const std::string& path);

// Same connectivity, replaced vertex positions (n x 3, or n x m with m < 3
// zero-padded, m > 3 rejected).
Mesh with_vertices(const Mesh& mesh, const Eigen::MatrixXd& coords);
Mesh scaled(const Mesh& mesh, double factor);

// Undirected edges, each as {min, max} vertex pair, lexicographically sorted.
std::vector<std::array<int, 2>> unique_edges(const Mesh& mesh);

}  // namespace beltrami
