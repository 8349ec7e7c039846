#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <vector>

#include "core/mesh.hpp"

namespace beltrami::oracles {

// O(n^3) all-pairs shortest paths over the mesh edge graph; brute-force
// reference for the Dijkstra implementation.
Eigen::MatrixXd floyd_warshall(const Mesh& mesh);

// Largest principal angle (radians) between span(U) and span(V) under the
// inner product diag(mass); pass ones for the plain Euclidean case.
double max_principal_angle(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V,
                           const Eigen::VectorXd& mass);

// Groups eigenvalues into numerically degenerate clusters:
// |l_i - l_j| < tol_rel * (1 + |l_i|) chains adjacent values together.
std::vector<std::pair<int, int>> eigenvalue_clusters(const Eigen::VectorXd& values,
                                                     double tol_rel = 1e-8);

// Independent dense solve of the generalized symmetric pencil B x = theta A x
// (A diagonal, given by its diagonal) via Eigen's Cholesky-based
// GeneralizedSelfAdjointEigenSolver; eigenvalues ascending.
void dense_generalized_eig(const Eigen::MatrixXd& B, const Eigen::VectorXd& mass,
                           Eigen::VectorXd& values, Eigen::MatrixXd& vectors);

// Euclidean pairwise distances between mesh vertices (chord distances).
Eigen::MatrixXd chord_distances(const Mesh& mesh);

}  // namespace beltrami::oracles
