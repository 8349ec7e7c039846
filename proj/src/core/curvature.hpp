#pragma once

#include <Eigen/Core>

#include "core/mesh.hpp"

namespace beltrami {

// Per-vertex discrete Gaussian curvature (angle defect over barycentric
// vertex area) plus the areas themselves.
struct CurvatureField {
  Eigen::VectorXd curvature;    // K_v, units 1/length^2
  Eigen::VectorXd vertex_area;  // one third of incident face areas
  double total_area = 0.0;

  // Sum of K_v * area_v; equals 2*pi*chi on closed meshes (Gauss-Bonnet,
  // exact up to rounding since the angle defects telescope).
  double total_defect() const { return curvature.dot(vertex_area); }
};

CurvatureField gaussian_curvature(const Mesh& mesh);

// Pseudometric weights w_v = (max(|K_v| * s^2, eps))^alpha with
// s^2 = total_area / (4*pi). The stored weights are dimensionless and
// invariant under uniform mesh scaling for every alpha; mass_weights()
// removes the nondimensionalization so the alpha=0 mass is the plain
// lumped one and the alpha=1 mass element |K_v|*area_v is scale-invariant.
struct MetricWeights {
  double alpha = 0.0;
  double epsilon = 1e-8;
  double area_scale = 1.0;  // s^2
  Eigen::VectorXd weights;

  Eigen::VectorXd mass_weights() const {
    return weights / std::pow(area_scale, alpha);
  }
};

MetricWeights metric_weights(const CurvatureField& curv, double alpha, double epsilon = 1e-8);

}  // namespace beltrami
