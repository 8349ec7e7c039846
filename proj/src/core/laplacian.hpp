#pragma once

#include <Eigen/SparseCore>

#include "core/curvature.hpp"
#include "core/mesh.hpp"

namespace beltrami {

using SparseMatrixd = Eigen::SparseMatrix<double>;

// Cotangent stiffness matrix: L_uv = -(cot t1 + cot t2)/2 on edges, diagonal
// equal to minus the off-diagonal row sum. Symmetric positive semidefinite;
// f'Lf is the discrete Dirichlet energy. Neumann boundaries are natural in
// this weak form, so boundary vertices get no special rows.
SparseMatrixd assemble_stiffness(const Mesh& mesh);

// Lumped (diagonal) mass matrix for the interpolated pseudometric, returned
// as its diagonal: A_vv = mass_weight_v * barycentric vertex area. alpha=0
// reduces to the plain lumped mass; alpha=1 gives |K_v|*area_v (floored),
// which is invariant to uniform scaling.
Eigen::VectorXd assemble_mass(const Mesh& mesh, const MetricWeights& weights);

// Regular-metric shortcut (alpha = 0).
Eigen::VectorXd assemble_mass(const Mesh& mesh);

}  // namespace beltrami
