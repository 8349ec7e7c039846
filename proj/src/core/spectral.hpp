#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "core/eigensolver.hpp"

namespace beltrami {

struct ProjectionResult {
  Eigen::VectorXd coefficients;   // beta_i = phi_i' A f
  Eigen::VectorXd reconstruction; // sum beta_i phi_i over the first n modes
};

ProjectionResult project(const Eigen::VectorXd& field, const SpectralBasis& basis, int modes);

// Truncation-error report for the representation bound
// ||r_n||^2 <= f'Lf / lambda_{n+1}: ratio = residual_sq * lambda_next / dirichlet.
struct BoundReport {
  int truncation = 0;      // n
  double residual_sq = 0;  // r' A r with r = f - reconstruction
  double dirichlet = 0;    // f' L f
  double lambda_next = 0;  // lambda_{n+1}
  double ratio = 0;
};

// Requires modes + 1 <= basis.size() and a non-constant field
// (f'Lf >= 1e-12 f'Af, otherwise ConstantFunction).
BoundReport bound_check(const Eigen::VectorXd& field, const SpectralBasis& basis, int modes);

// Worst-case ratio sup_f ||f - P_rival f||_A^2 * lambda_{n+1} / (f'Lf) over
// f in span{phi_1..phi_{n+1}}, where P_rival projects A-orthogonally onto the
// rival span. rival_fields: n_verts x n matrix of A-independent columns.
// Equals 1 when the rival is the leading eigenbasis; >= 1 for any rival.
double optimality_audit(const SpectralBasis& basis, const Eigen::MatrixXd& rival_fields);

struct AuditSweep {
  Eigen::VectorXd ratios;  // one worst-case ratio per trial
  double min_ratio = 0;
  double mean_ratio = 0;
};

// optimality_audit against `trials` random rival frames of the given dimension.
AuditSweep audit_random_rivals(const SpectralBasis& basis, int subspace_dim, int trials,
                               std::uint64_t seed);

}  // namespace beltrami
