#include "core/rpca.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace beltrami {
namespace {

void check_data(const Eigen::MatrixXd& data, const Eigen::VectorXd& mass) {
  if (data.rows() != mass.size()) {
    fail(ErrorCode::DimensionMismatch, "data rows must match mesh vertex count");
  }
  if (data.cols() < 1) fail(ErrorCode::DimensionMismatch, "data matrix has no columns");
}

double projection_error_of(const Eigen::MatrixXd& weighted_data, const Eigen::MatrixXd& y) {
  // ||Y||_F^2 - ||Y' Q||_F^2 for Euclidean-orthonormal Q (= A^{1/2} P).
  const double total = weighted_data.squaredNorm();
  const double captured = (y.transpose() * weighted_data).squaredNorm();
  return total - captured;
}

}  // namespace

RegularizedBasis weighted_pca(const Eigen::MatrixXd& data, const Eigen::VectorXd& mass, int m) {
  check_data(data, mass);
  if (m < 1 || m > std::min(data.rows(), data.cols())) {
    fail(ErrorCode::DimensionMismatch, "basis size must be in 1..min(n, d)");
  }
  const Eigen::VectorXd sqrt_mass = mass.array().sqrt();
  const Eigen::MatrixXd weighted = sqrt_mass.asDiagonal() * data;  // A^{1/2} X
  Eigen::BDCSVD<Eigen::MatrixXd> svd(weighted, Eigen::ComputeThinU);

  RegularizedBasis out;
  out.mu = 0.0;
  const Eigen::MatrixXd y = svd.matrixU().leftCols(m);
  out.basis = mass.array().rsqrt().matrix().asDiagonal() * y;
  out.theta = svd.singularValues().head(m).array().square();
  out.projection_error = projection_error_of(weighted, y);
  out.dirichlet_energy = std::numeric_limits<double>::quiet_NaN();  // no stiffness here
  return out;
}

RegularizedBasis regularized_basis(const Eigen::MatrixXd& data, const SparseMatrixd& stiffness,
                                   const Eigen::VectorXd& mass, double mu, int m) {
  check_data(data, mass);
  if (mu < 0.0) fail(ErrorCode::NegativeMu, "mu must be nonnegative");
  if (stiffness.rows() != mass.size()) {
    fail(ErrorCode::DimensionMismatch, "stiffness dimension must match mesh vertex count");
  }
  const int n = static_cast<int>(mass.size());
  if (m < 1 || m > n) fail(ErrorCode::DimensionMismatch, "basis size must be in 1..n");

  const Eigen::VectorXd sqrt_mass = mass.array().sqrt();
  const Eigen::VectorXd inv_sqrt_mass = mass.array().rsqrt();
  const Eigen::MatrixXd weighted = sqrt_mass.asDiagonal() * data;

  // Symmetric reduction of the pencil: A^{1/2}XX'A^{1/2} - mu A^{-1/2}LA^{-1/2}.
  Eigen::MatrixXd M = weighted * weighted.transpose();
  M -= mu * Eigen::MatrixXd(inv_sqrt_mass.asDiagonal() * stiffness * inv_sqrt_mass.asDiagonal());
  M = 0.5 * (M + M.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success) {
    fail(ErrorCode::ConvergenceFailure, "regularized PCA eigendecomposition failed");
  }

  RegularizedBasis out;
  out.mu = mu;
  out.theta = es.eigenvalues().tail(m).reverse();
  const Eigen::MatrixXd y = es.eigenvectors().rightCols(m).rowwise().reverse();
  out.basis = inv_sqrt_mass.asDiagonal() * y;
  out.projection_error = projection_error_of(weighted, y);
  out.dirichlet_energy = (out.basis.transpose() * (stiffness * out.basis)).trace();
  return out;
}

Eigen::VectorXd rpca_reconstruct(const Eigen::VectorXd& field, const RegularizedBasis& basis,
                                 const Eigen::VectorXd& mass) {
  if (field.size() != basis.basis.rows() || field.size() != mass.size()) {
    fail(ErrorCode::DimensionMismatch, "field length does not match basis dimension");
  }
  return basis.basis * (basis.basis.transpose() * mass.cwiseProduct(field));
}

double mu_from_scaled(double mu_hat, const Eigen::MatrixXd& data, const SparseMatrixd& stiffness,
                      const Eigen::VectorXd& mass) {
  check_data(data, mass);
  if (mu_hat < 0.0) fail(ErrorCode::NegativeMu, "mu must be nonnegative");

  // ||L||_1: max absolute column sum of the sparse stiffness.
  Eigen::VectorXd col_sums = Eigen::VectorXd::Zero(stiffness.cols());
  for (int c = 0; c < stiffness.outerSize(); ++c) {
    for (SparseMatrixd::InnerIterator it(stiffness, c); it; ++it) {
      col_sums[c] += std::abs(it.value());
    }
  }
  const double stiffness_norm = col_sums.maxCoeff();

  // ||A X X' A||_1 column by column, never forming the n x n product.
  const Eigen::MatrixXd u = mass.asDiagonal() * data;  // A X
  double data_norm = 0.0;
  for (Eigen::Index j = 0; j < u.rows(); ++j) {
    data_norm = std::max(data_norm, (u * u.row(j).transpose()).cwiseAbs().sum());
  }
  if (data_norm <= 0.0) fail(ErrorCode::InvalidArgument, "data matrix is zero");
  return mu_hat * data_norm / stiffness_norm;
}

}  // namespace beltrami
