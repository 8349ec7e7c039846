#include "core/laplacian.hpp"

#include <Eigen/Geometry>
#include <vector>

#include "core/errors.hpp"

namespace beltrami {

SparseMatrixd assemble_stiffness(const Mesh& mesh) {
  const int n = mesh.vertex_count();
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(mesh.faces.size() * 12);

  for (const auto& f : mesh.faces) {
    for (int c = 0; c < 3; ++c) {
      const int i = f[(c + 1) % 3];
      const int j = f[(c + 2) % 3];
      const Eigen::Vector3d u = mesh.vertex(i) - mesh.vertex(f[c]);
      const Eigen::Vector3d v = mesh.vertex(j) - mesh.vertex(f[c]);
      const double cross = u.cross(v).norm();  // > 0, degenerate faces dropped at load
      const double half_cot = 0.5 * u.dot(v) / cross;
      entries.emplace_back(i, j, -half_cot);
      entries.emplace_back(j, i, -half_cot);
      entries.emplace_back(i, i, half_cot);
      entries.emplace_back(j, j, half_cot);
    }
  }

  SparseMatrixd L(n, n);
  L.setFromTriplets(entries.begin(), entries.end());
  L.makeCompressed();
  return L;
}

Eigen::VectorXd assemble_mass(const Mesh& mesh, const MetricWeights& weights) {
  if (weights.weights.size() != mesh.vertex_count()) {
    fail(ErrorCode::DimensionMismatch, "metric weights defined on a different mesh");
  }
  Eigen::VectorXd area = Eigen::VectorXd::Zero(mesh.vertex_count());
  for (int f = 0; f < mesh.face_count(); ++f) {
    const double third = mesh.face_area(f) / 3.0;
    for (int idx : mesh.faces[f]) area[idx] += third;
  }
  return weights.mass_weights().cwiseProduct(area);
}

Eigen::VectorXd assemble_mass(const Mesh& mesh) {
  MetricWeights flat;
  flat.alpha = 0.0;
  flat.weights = Eigen::VectorXd::Ones(mesh.vertex_count());
  return assemble_mass(mesh, flat);
}

}  // namespace beltrami
