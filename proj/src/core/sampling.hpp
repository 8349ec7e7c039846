#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "core/mesh.hpp"

namespace beltrami {

struct SampleSet {
  enum class Method { FarthestPoint, Explicit };
  std::vector<int> indices;
  Method method = Method::Explicit;
};

// Maps a source vertex to its distance field (n entries).
using DistanceOracle = std::function<Eigen::VectorXd(int)>;

// Greedy farthest-point sampling: indices[0] = seed, each next index
// maximizes the minimum distance to the chosen set; ties break to the
// lowest vertex index. The oracle defaults to the Dijkstra distance field.
SampleSet farthest_point_sample(const Mesh& mesh, int count, int seed_vertex,
                                const DistanceOracle& oracle = {});

}  // namespace beltrami
