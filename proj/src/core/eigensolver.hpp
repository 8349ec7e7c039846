#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>

#include "core/rng.hpp"

namespace beltrami {

struct EigenOptions {
  // Convergence: ||L*phi - lambda*A*phi|| / ||A*phi|| < tol per pair.
  double tol = 1e-9;
  // Cap on block-Krylov expansion rounds before ConvergenceFailure.
  int max_block_steps = 60;
  // Block size is k + block_margin (contract: at least k + 8).
  int block_margin = 8;
  std::uint64_t seed = kDefaultSeed;
};

// k smallest eigenpairs of the generalized pencil L*phi = lambda*A*phi with
// diagonal mass A. Eigenvalues ascend; eigenvectors are A-orthonormal and
// sign-fixed so the entry of largest magnitude is positive.
struct SpectralBasis {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;            // n x k
  Eigen::VectorXd mass;                    // diagonal of A used in the solve
  Eigen::SparseMatrix<double> stiffness;   // L used in the solve

  int size() const { return static_cast<int>(eigenvalues.size()); }
  int dimension() const { return static_cast<int>(eigenvectors.rows()); }
};

// Shift-invert block Lanczos on A^{1/2}(L - sigma*A)^{-1}A^{1/2} with
// sigma = -1e-8 * trace(L)/n, full reorthogonalization and Rayleigh-Ritz
// restarts. Falls through to the dense path when the block would span the
// whole space.
SpectralBasis smallest_eigenpairs(const Eigen::SparseMatrix<double>& stiffness,
                                  const Eigen::VectorXd& mass, int k,
                                  const EigenOptions& opts = {});

// Dense full decomposition of A^{-1/2} L A^{-1/2} (oracle path; intended for
// n up to a couple thousand).
SpectralBasis dense_eigenpairs(const Eigen::SparseMatrix<double>& stiffness,
                               const Eigen::VectorXd& mass, int k);

}  // namespace beltrami
