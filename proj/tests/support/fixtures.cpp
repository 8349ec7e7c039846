#include "support/fixtures.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <utility>

namespace beltrami::fixtures {
namespace {

Mesh build(const std::vector<Eigen::Vector3d>& verts, std::vector<std::array<int, 3>> faces) {
  Eigen::Matrix<double, Eigen::Dynamic, 3> v(verts.size(), 3);
  for (std::size_t i = 0; i < verts.size(); ++i) v.row(static_cast<int>(i)) = verts[i].transpose();
  return finalize_mesh(std::move(v), std::move(faces)).mesh;
}

}  // namespace

Mesh single_triangle() {
  return build({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});
}

Mesh two_disjoint_triangles() {
  return build({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {5, 0, 0}, {6, 0, 0}, {5, 1, 0}},
               {{0, 1, 2}, {3, 4, 5}});
}

Mesh tetrahedron(double edge) {
  const double s = edge / (2.0 * std::sqrt(2.0));
  return build({{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}},
               {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}});
}

Mesh octahedron(double radius) {
  const double r = radius;
  return build({{r, 0, 0}, {-r, 0, 0}, {0, r, 0}, {0, -r, 0}, {0, 0, r}, {0, 0, -r}},
               {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4}, {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}});
}

Mesh icosahedron() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> v = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& p : v) p.normalize();
  std::vector<std::array<int, 3>> f = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  return build(v, std::move(f));
}

Mesh icosphere(int subdivisions, double radius) {
  Mesh mesh = icosahedron();
  std::vector<Eigen::Vector3d> verts;
  verts.reserve(static_cast<std::size_t>(12) << (2 * subdivisions));
  for (int i = 0; i < mesh.vertex_count(); ++i) verts.push_back(mesh.vertex(i));
  std::vector<std::array<int, 3>> faces = mesh.faces;

  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> midpoint;
    const auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Eigen::Vector3d p = (verts[a] + verts[b]).normalized();
      verts.push_back(p);
      const int idx = static_cast<int>(verts.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = mid(f[0], f[1]);
      const int bc = mid(f[1], f[2]);
      const int ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  for (auto& p : verts) p *= radius;
  return build(verts, std::move(faces));
}

Mesh grid(int nx, int ny, double w, double h) {
  std::vector<Eigen::Vector3d> verts;
  verts.reserve(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      verts.emplace_back(w * i / (nx - 1), h * j / (ny - 1), 0.0);
    }
  }
  std::vector<std::array<int, 3>> faces;
  faces.reserve(static_cast<std::size_t>(nx - 1) * (ny - 1) * 2);
  const auto at = [nx](int i, int j) { return j * nx + i; };
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      faces.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
      faces.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
    }
  }
  return build(verts, std::move(faces));
}

std::string scratch_dir() {
  static const std::string dir = [] {
    auto base = std::filesystem::temp_directory_path() / "beltrami-tests";
    std::filesystem::create_directories(base);
    return base.string();
  }();
  return dir;
}

std::string scratch_path(const std::string& name) {
  return (std::filesystem::path(scratch_dir()) / name).string();
}

}  // namespace beltrami::fixtures
