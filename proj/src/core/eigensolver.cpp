#include "core/eigensolver.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <vector>

#include "core/errors.hpp"

namespace beltrami {
namespace {

void check_pencil(const Eigen::SparseMatrix<double>& L, const Eigen::VectorXd& mass, int k) {
  if (L.rows() != L.cols() || L.rows() != mass.size()) {
    fail(ErrorCode::DimensionMismatch, "stiffness and mass dimensions disagree");
  }
  if (k < 1 || k > L.rows()) {
    fail(ErrorCode::DimensionMismatch, "requested eigenpair count out of range");
  }
  if ((mass.array() <= 0.0).any()) {
    fail(ErrorCode::InvalidArgument, "mass diagonal must be positive");
  }
}

// Largest-magnitude entry made positive; first index wins ties.
void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index best = 0;
    double mag = -1.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double m = std::abs(vectors(r, c));
      if (m > mag) {
        mag = m;
        best = r;
      }
    }
    if (vectors(best, c) < 0.0) vectors.col(c) = -vectors.col(c);
  }
}

// Eigenvalues of a PSD pencil may come out at rounding level below zero.
void snap_tiny_negatives(Eigen::VectorXd& values) {
  if (values.size() == 0) return;
  const double scale = std::max(1.0, std::abs(values[values.size() - 1]));
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] < 0.0 && values[i] > -1e-10 * scale) values[i] = 0.0;
  }
}

SpectralBasis finish(const Eigen::SparseMatrix<double>& L, const Eigen::VectorXd& mass,
                     Eigen::VectorXd values, Eigen::MatrixXd vectors) {
  snap_tiny_negatives(values);
  fix_signs(vectors);
  SpectralBasis basis;
  basis.eigenvalues = std::move(values);
  basis.eigenvectors = std::move(vectors);
  basis.mass = mass;
  basis.stiffness = L;
  return basis;
}

// Connected components over the stiffness sparsity graph. The indicator of
// each component is an exact null vector of L; deflating them keeps the
// near-singular shift from polluting the Krylov directions.
std::vector<int> component_ids(const Eigen::SparseMatrix<double>& L) {
  const int n = static_cast<int>(L.rows());
  std::vector<int> comp(n, -1);
  std::vector<int> stack;
  int count = 0;
  for (int seed = 0; seed < n; ++seed) {
    if (comp[seed] >= 0) continue;
    comp[seed] = count;
    stack.push_back(seed);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (Eigen::SparseMatrix<double>::InnerIterator it(L, v); it; ++it) {
        const int u = static_cast<int>(it.row());
        if (comp[u] < 0) {
          comp[u] = count;
          stack.push_back(u);
        }
      }
    }
    ++count;
  }
  return comp;
}

}  // namespace

SpectralBasis dense_eigenpairs(const Eigen::SparseMatrix<double>& L, const Eigen::VectorXd& mass,
                               int k) {
  check_pencil(L, mass, k);
  const Eigen::VectorXd inv_sqrt = mass.array().rsqrt();
  Eigen::MatrixXd M = Eigen::MatrixXd(L);
  M = inv_sqrt.asDiagonal() * M * inv_sqrt.asDiagonal();
  M = 0.5 * (M + M.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success) {
    fail(ErrorCode::ConvergenceFailure, "dense eigendecomposition failed");
  }
  Eigen::VectorXd values = es.eigenvalues().head(k);
  Eigen::MatrixXd vectors = inv_sqrt.asDiagonal() * es.eigenvectors().leftCols(k);
  return finish(L, mass, std::move(values), std::move(vectors));
}

SpectralBasis smallest_eigenpairs(const Eigen::SparseMatrix<double>& L, const Eigen::VectorXd& mass,
                                  int k, const EigenOptions& opts) {
  check_pencil(L, mass, k);
  const int n = static_cast<int>(L.rows());
  const int block = std::min(n, k + std::max(opts.block_margin, 8));
  if (block >= n) return dense_eigenpairs(L, mass, k);

  const Eigen::VectorXd sqrt_mass = mass.array().sqrt();
  const Eigen::VectorXd inv_sqrt_mass = mass.array().rsqrt();

  // Exact null modes first (one constant per connected component, whitened).
  const std::vector<int> comp = component_ids(L);
  const int null_dim = 1 + *std::max_element(comp.begin(), comp.end());
  Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(n, null_dim);
  for (int v = 0; v < n; ++v) kernel(v, comp[v]) = sqrt_mass[v];
  for (int c = 0; c < null_dim; ++c) kernel.col(c).normalize();

  const auto deflate = [&](Eigen::MatrixXd& x) { x -= kernel * (kernel.transpose() * x); };

  // Rayleigh quotient and residual in the original pencil.
  const auto pencil_value = [&](const Eigen::VectorXd& phi, double& lambda, double& residual) {
    const Eigen::VectorXd a_phi = mass.cwiseProduct(phi);
    lambda = phi.dot(L * phi) / phi.dot(a_phi);
    residual = (L * phi - lambda * a_phi).norm() / a_phi.norm();
  };

  if (k <= null_dim) {
    Eigen::VectorXd values(k);
    Eigen::MatrixXd vectors(n, k);
    for (int c = 0; c < k; ++c) {
      vectors.col(c) = inv_sqrt_mass.cwiseProduct(kernel.col(c));
      double lambda, residual;
      pencil_value(vectors.col(c), lambda, residual);
      values[c] = lambda;
    }
    return finish(L, mass, std::move(values), std::move(vectors));
  }

  // Factor K = L - sigma*A once; the deflated operator is
  //   Op(x) = (I - U0 U0') A^{1/2} K^{-1} A^{1/2} x
  // on the complement of the whitened kernel U0, symmetric positive definite
  // there with benign conditioning.
  double trace = 0.0;
  for (int c = 0; c < n; ++c) trace += L.coeff(c, c);
  const double sigma = -1e-8 * trace / n;

  Eigen::SparseMatrix<double> shifted = L;
  Eigen::SparseMatrix<double> diag(n, n);
  diag.reserve(Eigen::VectorXi::Ones(n));
  for (int i = 0; i < n; ++i) diag.insert(i, i) = -sigma * mass[i];
  shifted += diag;

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor(shifted);
  if (factor.info() != Eigen::Success) {
    fail(ErrorCode::ConvergenceFailure, "factorization of shifted operator failed");
  }

  const auto apply_op = [&](const Eigen::MatrixXd& x) -> Eigen::MatrixXd {
    Eigen::MatrixXd y = sqrt_mass.asDiagonal() * x;
    y = factor.solve(y);
    y = sqrt_mass.asDiagonal() * y;
    deflate(y);
    return y;
  };

  const int wanted = k - null_dim;  // pairs to find in the complement
  Rng rng(opts.seed);
  const int capacity = std::min(n - null_dim, block * (opts.max_block_steps + 1));
  int reserved = std::min(capacity, 4 * block);
  Eigen::MatrixXd Q(n, reserved);
  Eigen::MatrixXd OpQ(n, reserved);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(reserved, reserved);
  int m = 0;

  const auto ensure_reserved = [&](int needed) {
    if (needed <= reserved) return;
    const int next = std::min(capacity, std::max(needed, 2 * reserved));
    Q.conservativeResize(Eigen::NoChange, next);
    OpQ.conservativeResize(Eigen::NoChange, next);
    Eigen::MatrixXd grown = Eigen::MatrixXd::Zero(next, next);
    grown.topLeftCorner(m, m) = H.topLeftCorner(m, m);
    H.swap(grown);
    reserved = next;
  };

  // Orthonormalizes `cols` against the kernel, Q[:, 0:m] and itself;
  // rank-deficient directions are replaced with fresh random vectors.
  const auto append_block = [&](Eigen::MatrixXd cols) -> int {
    int accepted = 0;
    const auto orth_passes = [&](Eigen::VectorXd& w) {
      for (int pass = 0; pass < 2; ++pass) {
        w -= kernel * (kernel.transpose() * w);
        if (m + accepted > 0) {
          auto basis = Q.leftCols(m + accepted);
          w -= basis * (basis.transpose() * w);
        }
      }
    };
    for (Eigen::Index c = 0; c < cols.cols() && m + accepted < capacity; ++c) {
      ensure_reserved(m + accepted + 1);
      Eigen::VectorXd w = cols.col(c);
      const double original = std::max(w.norm(), 1e-300);
      orth_passes(w);
      int guard = 0;
      while (w.norm() <= 1e-12 * original && guard++ < 8) {
        for (int i = 0; i < n; ++i) w[i] = rng.normal();
        orth_passes(w);
      }
      const double norm = w.norm();
      if (norm <= 0.0) continue;
      Q.col(m + accepted) = w / norm;
      ++accepted;
    }
    return accepted;
  };

  Eigen::MatrixXd seed_block(n, block);
  for (int c = 0; c < block; ++c) {
    for (int r = 0; r < n; ++r) seed_block(r, c) = rng.normal();
  }
  int fresh = append_block(std::move(seed_block));

  for (int step = 0; step <= opts.max_block_steps; ++step) {
    const int old_m = m;
    m += fresh;
    OpQ.middleCols(old_m, fresh) = apply_op(Q.middleCols(old_m, fresh));
    H.block(0, old_m, m, fresh) = Q.leftCols(m).transpose() * OpQ.middleCols(old_m, fresh);
    H.block(old_m, 0, fresh, old_m) = H.block(0, old_m, old_m, fresh).transpose();

    if (m >= wanted) {
      Eigen::MatrixXd Hm = H.topLeftCorner(m, m);
      Hm = 0.5 * (Hm + Hm.transpose()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rr(Hm);
      if (rr.info() != Eigen::Success) {
        fail(ErrorCode::ConvergenceFailure, "Rayleigh-Ritz decomposition failed");
      }

      // Largest Ritz values of the inverted operator = smallest lambdas.
      Eigen::MatrixXd ritz =
          Q.leftCols(m) * rr.eigenvectors().rightCols(wanted).rowwise().reverse();
      Eigen::MatrixXd phi = inv_sqrt_mass.asDiagonal() * ritz;

      Eigen::VectorXd values(wanted);
      bool converged = true;
      for (int i = 0; i < wanted && converged; ++i) {
        double residual;
        pencil_value(phi.col(i), values[i], residual);
        converged = residual < opts.tol;
      }
      if (converged) {
        Eigen::VectorXd all_values(k);
        Eigen::MatrixXd all_vectors(n, k);
        for (int c = 0; c < null_dim; ++c) {
          all_vectors.col(c) = inv_sqrt_mass.cwiseProduct(kernel.col(c));
          double residual;
          pencil_value(all_vectors.col(c), all_values[c], residual);
        }
        all_values.tail(wanted) = values;
        all_vectors.rightCols(wanted) = phi;

        std::vector<int> order(k);
        for (int i = 0; i < k; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return all_values[a] < all_values[b]; });
        Eigen::VectorXd sorted_values(k);
        Eigen::MatrixXd sorted_vectors(n, k);
        for (int i = 0; i < k; ++i) {
          sorted_values[i] = all_values[order[i]];
          sorted_vectors.col(i) = all_vectors.col(order[i]);
        }
        return finish(L, mass, std::move(sorted_values), std::move(sorted_vectors));
      }
    }

    if (step == opts.max_block_steps || m >= capacity) break;
    fresh = append_block(OpQ.middleCols(old_m, fresh));
    if (fresh == 0) break;
  }

  fail(ErrorCode::ConvergenceFailure,
       "eigensolver did not reach the residual tolerance within " +
           std::to_string(opts.max_block_steps) + " block steps");
}

}  // namespace beltrami
