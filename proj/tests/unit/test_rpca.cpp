#include <Eigen/Dense>

#include "core/eigensolver.hpp"
#include "core/errors.hpp"
#include "core/laplacian.hpp"
#include "core/rng.hpp"
#include "core/rpca.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace beltrami;

namespace {

struct Setup {
  Mesh mesh;
  SparseMatrixd stiffness;
  Eigen::VectorXd mass;
};

Setup make_setup(const Mesh& mesh) {
  return Setup{mesh, assemble_stiffness(mesh), assemble_mass(mesh)};
}

// Smooth, rich data: a few low eigenfunctions mixed with the coordinates.
Eigen::MatrixXd smooth_data(const Setup& s, int d, std::uint64_t seed) {
  const auto basis = dense_eigenpairs(s.stiffness, s.mass, std::min(12, s.mesh.vertex_count()));
  Rng rng(seed);
  Eigen::MatrixXd X(s.mesh.vertex_count(), d);
  for (int c = 0; c < d; ++c) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(s.mesh.vertex_count());
    for (int i = 0; i < basis.size(); ++i) f += rng.normal() * basis.eigenvectors.col(i);
    X.col(c) = f + 0.2 * s.mesh.vertices.col(c % 3);
  }
  return X;
}

double objective(const Setup& s, const Eigen::MatrixXd& P, const Eigen::MatrixXd& X, double mu) {
  double data_term = 0.0;
  for (int c = 0; c < X.cols(); ++c) {
    const Eigen::VectorXd r = P * (P.transpose() * s.mass.cwiseProduct(X.col(c))) - X.col(c);
    data_term += r.dot(s.mass.cwiseProduct(r));
  }
  return data_term + mu * (P.transpose() * (s.stiffness * P)).trace();
}

}  // namespace

TEST_CASE("single data column: the basis is that column, A-normalized") {
  const auto s = make_setup(fixtures::icosphere(2));
  Rng rng(3);
  Eigen::VectorXd x(s.mesh.vertex_count());
  for (int v = 0; v < x.size(); ++v) x[v] = rng.normal();
  const auto pca = weighted_pca(x, s.mass, 1);
  const Eigen::VectorXd expected = x / std::sqrt(x.dot(s.mass.cwiseProduct(x)));
  const double align = std::abs(pca.basis.col(0).dot(s.mass.cwiseProduct(expected)));
  CHECK(align == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pca.projection_error <= 1e-10);
}

TEST_CASE("A-orthonormal data columns span their own PCA basis") {
  const auto s = make_setup(fixtures::icosphere(2));
  const auto basis = dense_eigenpairs(s.stiffness, s.mass, 6);
  Eigen::MatrixXd X(s.mesh.vertex_count(), 2);
  X.col(0) = basis.eigenvectors.col(1);  // phi_2
  X.col(1) = basis.eigenvectors.col(4);  // phi_5
  const auto pca = weighted_pca(X, s.mass, 2);
  CHECK(oracles::max_principal_angle(pca.basis, X, s.mass) <= 1e-8);
}

TEST_CASE("weighted PCA attains the dense-oracle optimum projection error") {
  const auto s = make_setup(fixtures::icosphere(2));  // 162 <= 300
  const auto X = smooth_data(s, 4, 11);
  const auto pca = weighted_pca(X, s.mass, 4);

  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  const Eigen::MatrixXd AX = s.mass.asDiagonal() * X;
  oracles::dense_generalized_eig(AX * AX.transpose(), s.mass, values, vectors);
  const double total = (s.mass.array().sqrt().matrix().asDiagonal() * X).squaredNorm();
  const double oracle_error = total - values.tail(4).sum();
  CHECK(pca.projection_error <= oracle_error + 1e-9);
  CHECK(pca.projection_error >= oracle_error - 1e-9);
}

TEST_CASE("returned bases are A-orthonormal") {
  const auto s = make_setup(fixtures::icosphere(2));
  const auto X = smooth_data(s, 6, 7);
  for (double mu : {0.0, 1e-3, 1.0}) {
    const auto rb = regularized_basis(X, s.stiffness, s.mass, mu, 4);
    const Eigen::MatrixXd gram = rb.basis.transpose() * s.mass.asDiagonal() * rb.basis;
    CHECK((gram - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("mu=0 recovers weighted PCA") {
  const auto s = make_setup(fixtures::icosphere(2));
  const auto X = smooth_data(s, 6, 23);
  const auto pca = weighted_pca(X, s.mass, 4);
  const auto rb = regularized_basis(X, s.stiffness, s.mass, 0.0, 4);
  CHECK(oracles::max_principal_angle(pca.basis, rb.basis, s.mass) <= 1e-8);
}

TEST_CASE("large mu recovers the leading LBO eigenbasis") {
  const auto s = make_setup(fixtures::icosphere(2));
  const auto X = smooth_data(s, 6, 29);
  const int m = 4;  // l = 0 and the full l = 1 triplet: unambiguous subspace
  const double mu = mu_from_scaled(1e6, X, s.stiffness, s.mass);
  const auto rb = regularized_basis(X, s.stiffness, s.mass, mu, m);
  const auto lbo = dense_eigenpairs(s.stiffness, s.mass, m);
  CHECK(oracles::max_principal_angle(rb.basis, lbo.eigenvectors, s.mass) <= 1e-3);
}

TEST_CASE("mu sweep: Dirichlet energy falls, projection error rises") {
  const auto s = make_setup(fixtures::icosphere(2));
  const auto X = smooth_data(s, 6, 31);
  double prev_dirichlet = std::numeric_limits<double>::infinity();
  double prev_error = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20; ++i) {
    const double mu_hat = std::pow(10.0, -3.0 + 9.0 * i / 19.0);  // 1e-3 .. 1e6
    const double mu = mu_from_scaled(mu_hat, X, s.stiffness, s.mass);
    const auto rb = regularized_basis(X, s.stiffness, s.mass, mu, 4);
    CHECK(rb.dirichlet_energy <= prev_dirichlet + 1e-9 * (1.0 + std::abs(prev_dirichlet)));
    CHECK(rb.projection_error >= prev_error - 1e-9 * (1.0 + std::abs(prev_error)));
    prev_dirichlet = rb.dirichlet_energy;
    prev_error = rb.projection_error;
  }
}

TEST_CASE("no random A-orthonormal frame beats the returned basis objective") {
  const auto s = make_setup(fixtures::icosphere(2));
  const auto X = smooth_data(s, 5, 37);
  const double mu = mu_from_scaled(0.1, X, s.stiffness, s.mass);
  const auto rb = regularized_basis(X, s.stiffness, s.mass, mu, 3);
  const double ours = objective(s, rb.basis, X, mu);

  Rng rng(kDefaultSeed);
  const int nv = s.mesh.vertex_count();
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd F(nv, 3);
    for (int c = 0; c < 3; ++c) {
      for (int v = 0; v < nv; ++v) F(v, c) = rng.normal();
    }
    // A-orthonormalize via QR of A^{1/2} F.
    const Eigen::MatrixXd W = s.mass.array().sqrt().matrix().asDiagonal() * F;
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(W);
    const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(nv, 3);
    const Eigen::MatrixXd rival = s.mass.array().rsqrt().matrix().asDiagonal() * Q;
    CHECK(objective(s, rival, X, mu) >= ours - 1e-9 * (1.0 + std::abs(ours)));
  }
}

TEST_CASE("trace-max equivalence against the dense generalized oracle") {
  const auto s = make_setup(fixtures::icosphere(2));
  const auto X = smooth_data(s, 5, 41);
  const double mu = mu_from_scaled(0.5, X, s.stiffness, s.mass);
  const auto rb = regularized_basis(X, s.stiffness, s.mass, mu, 4);

  const Eigen::MatrixXd AX = s.mass.asDiagonal() * X;
  const Eigen::MatrixXd pencil =
      AX * AX.transpose() - mu * Eigen::MatrixXd(s.stiffness);
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  oracles::dense_generalized_eig(pencil, s.mass, values, vectors);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(rb.theta[i] - values[values.size() - 1 - i]) <=
          1e-8 * (1.0 + std::abs(values[values.size() - 1 - i])));
  }
  CHECK(oracles::max_principal_angle(rb.basis, vectors.rightCols(4), s.mass) <= 1e-6);
}

TEST_CASE("reconstruct: identity on the span, zero on the A-orthogonal complement") {
  const auto s = make_setup(fixtures::icosphere(2));
  const auto X = smooth_data(s, 4, 43);
  const auto rb = regularized_basis(X, s.stiffness, s.mass, 1e-3, 3);

  const Eigen::VectorXd in_span = rb.basis * Eigen::Vector3d(1.0, -2.0, 0.5);
  CHECK((rpca_reconstruct(in_span, rb, s.mass) - in_span).cwiseAbs().maxCoeff() <= 1e-9);

  Rng rng(47);
  Eigen::VectorXd f(s.mesh.vertex_count());
  for (int v = 0; v < f.size(); ++v) f[v] = rng.normal();
  const Eigen::VectorXd orth =
      f - rb.basis * (rb.basis.transpose() * s.mass.cwiseProduct(f));
  CHECK(rpca_reconstruct(orth, rb, s.mass).cwiseAbs().maxCoeff() <= 1e-9 * f.cwiseAbs().maxCoeff());

  // Idempotence.
  const Eigen::VectorXd once = rpca_reconstruct(f, rb, s.mass);
  const Eigen::VectorXd twice = rpca_reconstruct(once, rb, s.mass);
  CHECK((twice - once).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + once.cwiseAbs().maxCoeff()));
}

TEST_CASE("full-rank PCA reproduces a training column") {
  const auto s = make_setup(fixtures::icosphere(2));
  const auto X = smooth_data(s, 3, 53);
  const auto pca = weighted_pca(X, s.mass, 3);
  const Eigen::VectorXd x1 = X.col(0);
  CHECK((rpca_reconstruct(x1, pca, s.mass) - x1).cwiseAbs().maxCoeff() <=
        1e-8 * (1.0 + x1.cwiseAbs().maxCoeff()));
}

TEST_CASE("parameter validation") {
  const auto s = make_setup(fixtures::octahedron());
  const auto X = smooth_data(s, 2, 59);
  try {
    regularized_basis(X, s.stiffness, s.mass, -1.0, 2);
    FAIL("expected NegativeMu");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegativeMu);
  }
  CHECK_THROWS_AS(weighted_pca(X, s.mass, 3), Error);          // m > d
  CHECK_THROWS_AS(weighted_pca(X.topRows(3), s.mass, 1), Error);  // n mismatch
}
