#include "core/mds.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace beltrami {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// X = top-m eigenvectors of B scaled by sqrt(eigenvalue), negatives truncated.
Eigen::MatrixXd psd_embedding(const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& es, int m,
                              bool* all_nonpositive = nullptr) {
  const Eigen::Index n = es.eigenvectors().rows();
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, m);
  bool any_positive = false;
  for (int c = 0; c < m; ++c) {
    const Eigen::Index idx = n - 1 - c;  // eigenvalues ascend
    if (idx < 0) break;
    const double theta = es.eigenvalues()[idx];
    if (theta > 0.0) {
      X.col(c) = es.eigenvectors().col(idx) * std::sqrt(theta);
      any_positive = true;
    }
  }
  if (all_nonpositive) *all_nonpositive = !any_positive;
  return X;
}

}  // namespace

EmbeddingResult classical_mds(const Eigen::MatrixXd& D, int m, int dense_cap) {
  const Eigen::Index n = D.rows();
  if (D.cols() != n) fail(ErrorCode::AsymmetricInput, "distance matrix must be square");
  if (n > dense_cap) {
    fail(ErrorCode::TooLarge, "distance matrix order " + std::to_string(n) +
                                  " exceeds dense solver cap " + std::to_string(dense_cap));
  }
  if (m < 1) fail(ErrorCode::DimensionMismatch, "embedding dimension must be positive");
  const double scale = std::max(D.cwiseAbs().maxCoeff(), 1e-300);
  if (((D - D.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) ||
      (D.diagonal().cwiseAbs().maxCoeff() > 1e-9 * scale)) {
    fail(ErrorCode::AsymmetricInput, "distance matrix must be symmetric with zero diagonal");
  }

  const auto t0 = Clock::now();
  Eigen::MatrixXd B = D.cwiseProduct(D);
  const Eigen::VectorXd row_mean = B.rowwise().mean();
  const double total_mean = row_mean.mean();
  B = -0.5 * (B - row_mean.replicate(1, n) - row_mean.transpose().replicate(n, 1) +
              Eigen::MatrixXd::Constant(n, n, total_mean));
  B = 0.5 * (B + B.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
  if (es.info() != Eigen::Success) {
    fail(ErrorCode::ConvergenceFailure, "classical scaling eigendecomposition failed");
  }

  EmbeddingResult out;
  out.coordinates = psd_embedding(es, m, &out.degenerate);
  out.elapsed_seconds = seconds_since(t0);
  out.stress = embedding_stress(out.coordinates, D);
  return out;
}

double default_eta(const DistanceFieldSet& fields) {
  const Eigen::MatrixXd block = fields.sample_block();
  return 1e-6 * block.cwiseProduct(block).mean();
}

FitResult fit_coefficients(const DistanceFieldSet& fields, const SpectralBasis& basis,
                           double eta) {
  if (fields.vertex_count() != basis.dimension()) {
    fail(ErrorCode::DimensionMismatch, "distance fields and basis live on different meshes");
  }
  if (eta < 0.0) fail(ErrorCode::InvalidArgument, "eta must be nonnegative");
  const int p = fields.sample_count();
  const int k = basis.size();

  FitResult result;
  result.underdetermined = k > p * (p + 1) / 2;

  Eigen::MatrixXd sampled(p, k);  // S_p Phi
  for (int i = 0; i < p; ++i) sampled.row(i) = basis.eigenvectors.row(fields.sources.indices[i]);

  Eigen::MatrixXd block = fields.sample_block();
  Eigen::MatrixXd B = block.cwiseProduct(block);
  B = 0.5 * (B + B.transpose()).eval();  // graph distances are symmetric to rounding

  Eigen::BDCSVD<Eigen::MatrixXd> svd(sampled, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double s_tol = 1e-10 * std::max(s.size() > 0 ? s[0] : 0.0, 1e-300);
  int rank = 0;
  while (rank < s.size() && s[rank] > s_tol) ++rank;
  if (rank < std::min(p, k)) {
    fail(ErrorCode::DegenerateSampling,
         "sampled eigenvector matrix has rank " + std::to_string(rank) + " < " +
             std::to_string(std::min(p, k)));
  }

  // Minimal-norm closed form of the unregularized fit: in the SVD frame the
  // data term is diagonal per entry.
  const auto U = svd.matrixU().leftCols(rank);
  const auto V = svd.matrixV().leftCols(rank);
  const Eigen::VectorXd inv_s = s.head(rank).cwiseInverse();
  Eigen::MatrixXd C =
      V * (inv_s.asDiagonal() * (U.transpose() * B * U) * inv_s.asDiagonal()) * V.transpose();
  C = 0.5 * (C + C.transpose()).eval();

  if (eta > 0.0) {
    // Normal equations G C G + eta W2 o C = R with G = Psi'Psi. Jacobi-
    // preconditioned CG over symmetric matrices, warm-started at the
    // closed-form solution.
    const Eigen::MatrixXd G = sampled.transpose() * sampled;
    const Eigen::MatrixXd R = sampled.transpose() * B * sampled;
    Eigen::MatrixXd W2(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        const double w = basis.eigenvalues[i] + basis.eigenvalues[j];
        W2(i, j) = w * w;
      }
    }
    const auto apply = [&](const Eigen::MatrixXd& X) -> Eigen::MatrixXd {
      return G * X * G + eta * W2.cwiseProduct(X);
    };
    Eigen::MatrixXd precond(k, k);
    const Eigen::VectorXd g_diag = G.diagonal();
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        precond(i, j) = g_diag[i] * g_diag[j] + G(i, j) * G(i, j) + eta * W2(i, j);
      }
    }

    const double r_norm = std::max(R.norm(), 1e-300);
    Eigen::MatrixXd residual = R - apply(C);
    Eigen::MatrixXd z = residual.cwiseQuotient(precond);
    Eigen::MatrixXd direction = z;
    double rho = residual.cwiseProduct(z).sum();
    const int max_iter = 20000;
    int it = 0;
    for (; it < max_iter && residual.norm() > 1e-8 * r_norm; ++it) {
      const Eigen::MatrixXd ad = apply(direction);
      const double denom = direction.cwiseProduct(ad).sum();
      if (!(denom > 0.0)) break;
      const double alpha = rho / denom;
      C += alpha * direction;
      residual -= alpha * ad;
      z = residual.cwiseQuotient(precond);
      const double rho_next = residual.cwiseProduct(z).sum();
      direction = z + (rho_next / rho) * direction;
      rho = rho_next;
    }
    result.cg_iterations = it;
    if (residual.norm() > 1e-8 * r_norm) {
      fail(ErrorCode::ConvergenceFailure,
           "coefficient fit did not reach residual tolerance 1e-8 in " +
               std::to_string(max_iter) + " CG iterations");
    }
    C = 0.5 * (C + C.transpose()).eval();
  }

  result.coefficients = std::move(C);
  return result;
}

EmbeddingResult spectral_mds(const Eigen::MatrixXd& C, const SpectralBasis& basis, int m,
                             const DistanceFieldSet* stress_ref) {
  const int k = basis.size();
  if (C.rows() != k || C.cols() != k) {
    fail(ErrorCode::DimensionMismatch, "coefficient matrix order does not match basis size");
  }
  if (m < 1 || m > k) fail(ErrorCode::DimensionMismatch, "embedding dimension must be in 1..k");

  const auto t0 = Clock::now();
  const int n = basis.dimension();
  // Centering operator in spectral coordinates: P = Phi'AJPhi = I - u v'/n.
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const Eigen::VectorXd u = basis.eigenvectors.transpose() * basis.mass.cwiseProduct(ones);
  const Eigen::VectorXd v = basis.eigenvectors.transpose() * ones;
  const Eigen::MatrixXd P = Eigen::MatrixXd::Identity(k, k) - u * v.transpose() / n;

  Eigen::MatrixXd H = -0.5 * P * C * P.transpose();
  H = 0.5 * (H + H.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  if (es.info() != Eigen::Success) {
    fail(ErrorCode::ConvergenceFailure, "spectral scaling eigendecomposition failed");
  }

  EmbeddingResult out;
  out.beta = psd_embedding(es, m, &out.degenerate);
  out.coordinates = basis.eigenvectors * out.beta;
  out.elapsed_seconds = seconds_since(t0);
  out.stress = out.degenerate ? 1.0
               : stress_ref  ? embedding_stress_rows(out.coordinates, *stress_ref)
                             : std::numeric_limits<double>::quiet_NaN();
  return out;
}

double embedding_stress(const Eigen::MatrixXd& X, const Eigen::MatrixXd& D) {
  const Eigen::Index n = D.rows();
  if (X.rows() != n || D.cols() != n) {
    fail(ErrorCode::DimensionMismatch, "stress: coordinate/distance sizes disagree");
  }
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (X.row(i) - X.row(j)).norm();
      const double diff = d - D(i, j);
      num += diff * diff;
      den += D(i, j) * D(i, j);
    }
  }
  return den > 0.0 ? num / den : 0.0;
}

double embedding_stress_rows(const Eigen::MatrixXd& X, const DistanceFieldSet& fields) {
  if (X.rows() != fields.vertex_count()) {
    fail(ErrorCode::DimensionMismatch, "stress: coordinate/field sizes disagree");
  }
  double num = 0.0, den = 0.0;
  for (int i = 0; i < fields.sample_count(); ++i) {
    const int s = fields.sources.indices[i];
    for (int j = 0; j < fields.vertex_count(); ++j) {
      const double d = (X.row(s) - X.row(j)).norm();
      const double diff = d - fields.fields(i, j);
      num += diff * diff;
      den += fields.fields(i, j) * fields.fields(i, j);
    }
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace beltrami
