#pragma once

#include <Eigen/Core>

#include "core/mesh.hpp"
#include "core/sampling.hpp"

namespace beltrami {

// Geodesic distances from `source` to every vertex: Dijkstra on the edge
// graph with Euclidean edge lengths. With `refine`, the result is improved
// by triangle-unfolding relaxation sweeps (never increases any distance).
Eigen::VectorXd distance_field(const Mesh& mesh, int source, bool refine = false);

struct DistanceFieldSet {
  SampleSet sources;
  Eigen::MatrixXd fields;  // p x n; row i = distances from sources.indices[i]

  int sample_count() const { return static_cast<int>(fields.rows()); }
  int vertex_count() const { return static_cast<int>(fields.cols()); }

  // p x p sample-to-sample block, in sample order.
  Eigen::MatrixXd sample_block() const;
};

DistanceFieldSet distance_rows(const Mesh& mesh, const SampleSet& samples, bool refine = false);

// Full n x n distance matrix (one Dijkstra per vertex); dense-MDS input.
Eigen::MatrixXd all_pairs_distances(const Mesh& mesh, bool refine = false);

}  // namespace beltrami
