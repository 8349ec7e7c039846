#pragma once

#include <Eigen/Core>

#include "core/eigensolver.hpp"
#include "core/geodesics.hpp"

namespace beltrami {

struct EmbeddingResult {
  Eigen::MatrixXd coordinates;  // n x m, columns centered
  Eigen::MatrixXd beta;         // k x m spectral coefficients (spectral path only)
  double stress = 0.0;
  double elapsed_seconds = 0.0;  // embedding computation only, stress excluded
  bool degenerate = false;
};

// Classical scaling: top-m eigenpairs of -1/2 J D2 J scaled by sqrt(eigenvalue),
// negative eigenvalues truncated. Dense; refuses n > dense_cap (TooLarge).
EmbeddingResult classical_mds(const Eigen::MatrixXd& distances, int m, int dense_cap = 4000);

struct FitResult {
  Eigen::MatrixXd coefficients;  // k x k symmetric C with D2 ~ Phi C Phi'
  bool underdetermined = false;  // k exceeds the p(p+1)/2 sample constraints
  int cg_iterations = 0;
};

// Least-squares fit of the squared-distance sample block in the spectral
// domain: argmin_C ||S Phi C Phi' S' - D2_pp||_F^2 + eta sum (l_i+l_j)^2 C_ij^2.
// eta = 0 solves in closed form through the SVD of the sampled eigenvectors
// (minimal-norm); eta > 0 runs preconditioned CG on the normal equations to
// relative residual 1e-8.
FitResult fit_coefficients(const DistanceFieldSet& fields, const SpectralBasis& basis, double eta);

// Default regularizer weight: 1e-6 * mean of the squared sample block.
double default_eta(const DistanceFieldSet& fields);

// Spectral classical scaling: beta from the top-m eigenpairs of
// H = -1/2 P C P' with P = Phi' A J Phi, then X = Phi beta. When stress_ref
// is given, stress is evaluated against those sampled rows; a zero C yields
// the degenerate X = 0 embedding with stress 1.
EmbeddingResult spectral_mds(const Eigen::MatrixXd& coefficients, const SpectralBasis& basis,
                             int m, const DistanceFieldSet* stress_ref = nullptr);

// Normalized stress over all vertex pairs / over sampled rows.
double embedding_stress(const Eigen::MatrixXd& coords, const Eigen::MatrixXd& distances);
double embedding_stress_rows(const Eigen::MatrixXd& coords, const DistanceFieldSet& fields);

}  // namespace beltrami
