#include "core/sampling.hpp"

#include <limits>

#include "core/errors.hpp"
#include "core/geodesics.hpp"

namespace beltrami {

SampleSet farthest_point_sample(const Mesh& mesh, int count, int seed_vertex,
                                const DistanceOracle& oracle) {
  const int n = mesh.vertex_count();
  if (count < 1 || count > n) {
    fail(ErrorCode::InvalidCount,
         "sample count " + std::to_string(count) + " out of range 1.." + std::to_string(n));
  }
  if (seed_vertex < 0 || seed_vertex >= n) {
    fail(ErrorCode::InvalidCount, "seed vertex out of range");
  }
  const DistanceOracle dist =
      oracle ? oracle : [&mesh](int src) { return distance_field(mesh, src); };

  SampleSet out;
  out.method = SampleSet::Method::FarthestPoint;
  out.indices.reserve(count);
  out.indices.push_back(seed_vertex);
  std::vector<char> chosen(n, 0);
  chosen[seed_vertex] = 1;

  Eigen::VectorXd min_dist = dist(seed_vertex);
  while (static_cast<int>(out.indices.size()) < count) {
    int best = -1;
    double best_dist = -std::numeric_limits<double>::infinity();
    for (int v = 0; v < n; ++v) {
      if (!chosen[v] && min_dist[v] > best_dist) {  // strict: lowest index wins ties
        best_dist = min_dist[v];
        best = v;
      }
    }
    out.indices.push_back(best);
    chosen[best] = 1;
    if (static_cast<int>(out.indices.size()) < count) {
      min_dist = min_dist.cwiseMin(dist(best));
    }
  }
  return out;
}

}  // namespace beltrami
