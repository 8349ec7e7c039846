#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "core/laplacian.hpp"

namespace beltrami {

// A-orthonormal basis balancing data projection error against Dirichlet
// smoothness. mu = 0 is area-weighted PCA; mu -> infinity recovers the
// leading LBO eigenbasis.
struct RegularizedBasis {
  Eigen::MatrixXd basis;   // n x m, P'AP = I
  double mu = 0.0;
  double projection_error = 0.0;  // sum_i ||P P'A x_i - x_i||_A^2
  double dirichlet_energy = 0.0;  // sum_j P_j' L P_j (NaN when L unavailable)
  Eigen::VectorXd theta;          // pencil eigenvalues, descending
};

// Top-m of the pencil (A X X' A, A); data columns are per-vertex fields.
RegularizedBasis weighted_pca(const Eigen::MatrixXd& data, const Eigen::VectorXd& mass, int m);

// Top-m of the pencil (A X X' A - mu L, A).
RegularizedBasis regularized_basis(const Eigen::MatrixXd& data, const SparseMatrixd& stiffness,
                                   const Eigen::VectorXd& mass, double mu, int m);

// Projection P P' A f; idempotent.
Eigen::VectorXd rpca_reconstruct(const Eigen::VectorXd& field, const RegularizedBasis& basis,
                                 const Eigen::VectorXd& mass);

// Scale calibration: mu realizing mu_hat = mu * ||L||_1 / ||A X X' A||_1.
double mu_from_scaled(double mu_hat, const Eigen::MatrixXd& data, const SparseMatrixd& stiffness,
                      const Eigen::VectorXd& mass);

}  // namespace beltrami
