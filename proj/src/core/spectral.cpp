#include "core/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace beltrami {
namespace {

void check_field(const Eigen::VectorXd& field, const SpectralBasis& basis) {
  if (field.size() != basis.dimension()) {
    fail(ErrorCode::DimensionMismatch, "field length does not match basis dimension");
  }
}

// Gram-Schmidt in the A-inner product; throws RankDeficientRival when a
// column drops below tol relative to its original A-norm.
Eigen::MatrixXd a_orthonormalize(const Eigen::MatrixXd& fields, const Eigen::VectorXd& mass,
                                 double tol = 1e-10) {
  Eigen::MatrixXd Q = fields;
  for (Eigen::Index j = 0; j < Q.cols(); ++j) {
    const double original = std::sqrt(Q.col(j).dot(mass.cwiseProduct(Q.col(j))));
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < j; ++i) {
        Q.col(j) -= Q.col(i).dot(mass.cwiseProduct(Q.col(j))) * Q.col(i);
      }
    }
    const double norm = std::sqrt(Q.col(j).dot(mass.cwiseProduct(Q.col(j))));
    if (!(norm > tol * std::max(original, 1e-300))) {
      fail(ErrorCode::RankDeficientRival,
           "rival fields are A-rank-deficient at column " + std::to_string(j));
    }
    Q.col(j) /= norm;
  }
  return Q;
}

}  // namespace

ProjectionResult project(const Eigen::VectorXd& field, const SpectralBasis& basis, int modes) {
  check_field(field, basis);
  if (modes < 0 || modes > basis.size()) {
    fail(ErrorCode::DimensionMismatch, "projection order exceeds basis size");
  }
  const auto sub = basis.eigenvectors.leftCols(modes);
  ProjectionResult out;
  out.coefficients = sub.transpose() * basis.mass.cwiseProduct(field);
  out.reconstruction = sub * out.coefficients;
  return out;
}

BoundReport bound_check(const Eigen::VectorXd& field, const SpectralBasis& basis, int modes) {
  check_field(field, basis);
  if (modes + 1 > basis.size()) {
    fail(ErrorCode::DimensionMismatch, "bound check needs lambda_{n+1}: basis too small");
  }
  const double f_af = field.dot(basis.mass.cwiseProduct(field));
  const double dirichlet = field.dot(basis.stiffness * field);
  if (dirichlet < 1e-12 * f_af) {
    fail(ErrorCode::ConstantFunction,
         "field is constant to tolerance; representation bound is trivial");
  }
  const auto projection = project(field, basis, modes);
  const Eigen::VectorXd residual = field - projection.reconstruction;

  BoundReport report;
  report.truncation = modes;
  report.residual_sq = residual.dot(basis.mass.cwiseProduct(residual));
  report.dirichlet = dirichlet;
  report.lambda_next = basis.eigenvalues[modes];
  report.ratio = report.residual_sq * report.lambda_next / dirichlet;
  return report;
}

double optimality_audit(const SpectralBasis& basis, const Eigen::MatrixXd& rival_fields) {
  if (rival_fields.rows() != basis.dimension()) {
    fail(ErrorCode::DimensionMismatch, "rival fields live on a different mesh");
  }
  const int n = static_cast<int>(rival_fields.cols());
  if (n + 1 > basis.size()) {
    fail(ErrorCode::DimensionMismatch, "audit needs n+1 eigenpairs in the basis");
  }

  const Eigen::MatrixXd rival = a_orthonormalize(rival_fields, basis.mass);
  const auto leading = basis.eigenvectors.leftCols(n + 1);

  // Residual quadratic form restricted to span{phi_1..phi_{n+1}}:
  // R = I - M M' with M_ij = <phi_i, psi_j>_A. Dirichlet form restricts to
  // diag(lambda_1..lambda_{n+1}).
  const Eigen::MatrixXd M = leading.transpose() * basis.mass.asDiagonal() * rival;
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(n + 1, n + 1) - M * M.transpose();
  R = 0.5 * (R + R.transpose()).eval();
  const Eigen::VectorXd lambda = basis.eigenvalues.head(n + 1);
  const double lambda_next = basis.eigenvalues[n];

  int start = 0;
  if (lambda[0] <= 1e-10 * std::max(lambda_next, 1e-300)) {
    // Zero mode: a rival span that misses the constants leaves f = phi_1
    // with positive residual and zero Dirichlet energy, so the supremum is
    // unbounded. That is the ConstantFunction signal, reported as +infinity
    // (it still certifies that the rival cannot beat the eigenbasis).
    // Otherwise R e_1 ~ 0 and the zero mode deflates exactly.
    if (R(0, 0) > 1e-8) return std::numeric_limits<double>::infinity();
    start = 1;
  }
  const int dim = n + 1 - start;
  if (dim == 0) return 0.0;

  const Eigen::VectorXd lam = lambda.segment(start, dim);
  if ((lam.array() <= 0.0).any()) {
    fail(ErrorCode::ConstantFunction, "multiple zero eigenvalues: mesh is disconnected");
  }
  const Eigen::VectorXd inv_sqrt_lam = lam.array().rsqrt();
  Eigen::MatrixXd pencil = inv_sqrt_lam.asDiagonal() * R.block(start, start, dim, dim) *
                           inv_sqrt_lam.asDiagonal();
  pencil = 0.5 * (pencil + pencil.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pencil);
  return lambda_next * es.eigenvalues().maxCoeff();
}

AuditSweep audit_random_rivals(const SpectralBasis& basis, int subspace_dim, int trials,
                               std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::InvalidCount, "trials must be positive");
  Rng rng(seed);
  AuditSweep sweep;
  sweep.ratios.resize(trials);
  const int nv = basis.dimension();
  Eigen::MatrixXd fields(nv, subspace_dim);
  for (int t = 0; t < trials; ++t) {
    for (int c = 0; c < subspace_dim; ++c) {
      for (int r = 0; r < nv; ++r) fields(r, c) = rng.normal();
    }
    sweep.ratios[t] = optimality_audit(basis, fields);
  }
  sweep.min_ratio = sweep.ratios.minCoeff();
  sweep.mean_ratio = sweep.ratios.mean();
  return sweep;
}

}  // namespace beltrami
