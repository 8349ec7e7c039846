#include "support/oracles.hpp"

#include <cmath>
#include <limits>

namespace beltrami::oracles {

Eigen::MatrixXd floyd_warshall(const Mesh& mesh) {
  const int n = mesh.vertex_count();
  const double inf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd d = Eigen::MatrixXd::Constant(n, n, inf);
  for (int i = 0; i < n; ++i) d(i, i) = 0.0;
  for (const auto& e : unique_edges(mesh)) {
    const double len = (mesh.vertex(e[0]) - mesh.vertex(e[1])).norm();
    d(e[0], e[1]) = std::min(d(e[0], e[1]), len);
    d(e[1], e[0]) = d(e[0], e[1]);
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (d(i, k) + d(k, j) < d(i, j)) d(i, j) = d(i, k) + d(k, j);
      }
    }
  }
  return d;
}

double max_principal_angle(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V,
                           const Eigen::VectorXd& mass) {
  const Eigen::VectorXd sqrt_mass = mass.array().sqrt();
  Eigen::MatrixXd Uw = sqrt_mass.asDiagonal() * U;
  Eigen::MatrixXd Vw = sqrt_mass.asDiagonal() * V;
  const Eigen::HouseholderQR<Eigen::MatrixXd> qu(Uw);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qv(Vw);
  const Eigen::MatrixXd Qu =
      qu.householderQ() * Eigen::MatrixXd::Identity(Uw.rows(), Uw.cols());
  const Eigen::MatrixXd Qv =
      qv.householderQ() * Eigen::MatrixXd::Identity(Vw.rows(), Vw.cols());
  // sin(theta_max) = ||(I - Qu Qu') Qv||_2; stable for tiny angles where the
  // cosine formulation saturates at sqrt(eps).
  const Eigen::MatrixXd residual = Qv - Qu * (Qu.transpose() * Qv);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
  const double s = std::min(1.0, svd.singularValues().maxCoeff());
  return std::asin(s);
}

std::vector<std::pair<int, int>> eigenvalue_clusters(const Eigen::VectorXd& values,
                                                     double tol_rel) {
  std::vector<std::pair<int, int>> clusters;
  const int k = static_cast<int>(values.size());
  int start = 0;
  for (int i = 1; i <= k; ++i) {
    if (i == k || std::abs(values[i] - values[i - 1]) >= tol_rel * (1.0 + std::abs(values[i]))) {
      clusters.emplace_back(start, i);  // [start, i)
      start = i;
    }
  }
  return clusters;
}

void dense_generalized_eig(const Eigen::MatrixXd& B, const Eigen::VectorXd& mass,
                           Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
  Eigen::MatrixXd A = mass.asDiagonal();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(B, A);
  values = es.eigenvalues();
  vectors = es.eigenvectors();
}

Eigen::MatrixXd chord_distances(const Mesh& mesh) {
  const int n = mesh.vertex_count();
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      d(i, j) = (mesh.vertex(i) - mesh.vertex(j)).norm();
      d(j, i) = d(i, j);
    }
  }
  return d;
}

}  // namespace beltrami::oracles
