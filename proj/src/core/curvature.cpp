#include "core/curvature.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <numbers>

#include "core/errors.hpp"

namespace beltrami {

CurvatureField gaussian_curvature(const Mesh& mesh) {
  const int n = mesh.vertex_count();
  Eigen::VectorXd angle_sum = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd area = Eigen::VectorXd::Zero(n);

  for (const auto& f : mesh.faces) {
    const Eigen::Vector3d p0 = mesh.vertex(f[0]);
    const Eigen::Vector3d p1 = mesh.vertex(f[1]);
    const Eigen::Vector3d p2 = mesh.vertex(f[2]);
    const double third = (p1 - p0).cross(p2 - p0).norm() / 6.0;
    for (int c = 0; c < 3; ++c) {
      const Eigen::Vector3d a = mesh.vertex(f[(c + 1) % 3]) - mesh.vertex(f[c]);
      const Eigen::Vector3d b = mesh.vertex(f[(c + 2) % 3]) - mesh.vertex(f[c]);
      angle_sum[f[c]] += std::atan2(a.cross(b).norm(), a.dot(b));
      area[f[c]] += third;
    }
  }

  CurvatureField out;
  out.vertex_area = area;
  out.total_area = area.sum();
  out.curvature.resize(n);
  for (int v = 0; v < n; ++v) {
    const double full_turn = mesh.boundary[v] ? std::numbers::pi : 2.0 * std::numbers::pi;
    // Isolated vertices (no incident face) carry zero area; defect is zero too.
    out.curvature[v] = area[v] > 0.0 ? (full_turn - angle_sum[v]) / area[v] : 0.0;
  }
  return out;
}

MetricWeights metric_weights(const CurvatureField& curv, double alpha, double epsilon) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    fail(ErrorCode::InvalidAlpha, "alpha must lie in [0, 1]");
  }
  if (!(epsilon > 0.0)) fail(ErrorCode::InvalidEpsilon, "epsilon must be positive");

  MetricWeights w;
  w.alpha = alpha;
  w.epsilon = epsilon;
  w.area_scale = curv.total_area / (4.0 * std::numbers::pi);
  w.weights = curv.curvature.array()
                  .abs()
                  .cwiseProduct(Eigen::ArrayXd::Constant(curv.curvature.size(), w.area_scale))
                  .cwiseMax(epsilon)
                  .pow(alpha)
                  .matrix();
  if (alpha == 0.0) w.weights.setOnes();  // |K|^0 == 1 exactly, regardless of floor
  return w;
}

}  // namespace beltrami
