#include "core/geodesics.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "core/errors.hpp"

namespace beltrami {
namespace {

struct EdgeGraph {
  std::vector<int> offsets;    // CSR over vertices
  std::vector<int> targets;
  std::vector<double> lengths;
};

EdgeGraph build_graph(const Mesh& mesh) {
  const auto edges = unique_edges(mesh);
  const int n = mesh.vertex_count();
  std::vector<int> degree(n, 0);
  for (const auto& e : edges) {
    ++degree[e[0]];
    ++degree[e[1]];
  }
  EdgeGraph g;
  g.offsets.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) g.offsets[v + 1] = g.offsets[v] + degree[v];
  g.targets.resize(g.offsets[n]);
  g.lengths.resize(g.offsets[n]);
  std::vector<int> cursor(g.offsets.begin(), g.offsets.end() - 1);
  for (const auto& e : edges) {
    const double len = (mesh.vertex(e[0]) - mesh.vertex(e[1])).norm();
    g.targets[cursor[e[0]]] = e[1];
    g.lengths[cursor[e[0]]++] = len;
    g.targets[cursor[e[1]]] = e[0];
    g.lengths[cursor[e[1]]++] = len;
  }
  return g;
}

Eigen::VectorXd dijkstra(const EdgeGraph& g, int n, int source) {
  const double inf = std::numeric_limits<double>::infinity();
  Eigen::VectorXd dist = Eigen::VectorXd::Constant(n, inf);
  dist[source] = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (int e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      const double cand = d + g.lengths[e];
      if (cand < dist[g.targets[e]]) {
        dist[g.targets[e]] = cand;
        heap.emplace(cand, g.targets[e]);
      }
    }
  }
  return dist;
}

// Distance through one triangle: source wavefront linear on segment [a, b]
// with values da, db; the candidate at v is min over the segment of the
// carried value plus the straight hop. Convex in t, solved by golden section.
double triangle_update(const Eigen::Vector3d& va, const Eigen::Vector3d& vb,
                       const Eigen::Vector3d& vv, double da, double db) {
  const auto value = [&](double t) {
    return (1.0 - t) * da + t * db + (vv - ((1.0 - t) * va + t * vb)).norm();
  };
  constexpr double inv_phi = 0.6180339887498949;
  double lo = 0.0, hi = 1.0;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = value(x1), f2 = value(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = value(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = value(x2);
    }
  }
  return std::min({value(0.0), value(1.0), value(0.5 * (lo + hi))});
}

void refine_field(const Mesh& mesh, Eigen::VectorXd& dist) {
  const double floor_improvement = 1e-15 * std::max(1.0, dist.maxCoeff());
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool changed = false;
    for (const auto& f : mesh.faces) {
      for (int c = 0; c < 3; ++c) {
        const int v = f[c], a = f[(c + 1) % 3], b = f[(c + 2) % 3];
        const double cand =
            triangle_update(mesh.vertex(a), mesh.vertex(b), mesh.vertex(v), dist[a], dist[b]);
        if (cand < dist[v] - floor_improvement) {
          dist[v] = cand;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
}

}  // namespace

Eigen::VectorXd distance_field(const Mesh& mesh, int source, bool refine) {
  if (source < 0 || source >= mesh.vertex_count()) {
    fail(ErrorCode::InvalidArgument, "source vertex out of range");
  }
  const EdgeGraph graph = build_graph(mesh);
  Eigen::VectorXd dist = dijkstra(graph, mesh.vertex_count(), source);
  if (!dist.allFinite()) {
    fail(ErrorCode::DisconnectedMesh, "mesh is not connected: unreachable vertices from source " +
                                          std::to_string(source));
  }
  if (refine) refine_field(mesh, dist);
  return dist;
}

Eigen::MatrixXd DistanceFieldSet::sample_block() const {
  const int p = sample_count();
  Eigen::MatrixXd block(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) block(i, j) = fields(i, sources.indices[j]);
  }
  return block;
}

DistanceFieldSet distance_rows(const Mesh& mesh, const SampleSet& samples, bool refine) {
  DistanceFieldSet out;
  out.sources = samples;
  out.fields.resize(static_cast<int>(samples.indices.size()), mesh.vertex_count());
  for (std::size_t i = 0; i < samples.indices.size(); ++i) {
    out.fields.row(static_cast<int>(i)) =
        distance_field(mesh, samples.indices[i], refine).transpose();
  }
  return out;
}

Eigen::MatrixXd all_pairs_distances(const Mesh& mesh, bool refine) {
  const int n = mesh.vertex_count();
  Eigen::MatrixXd d(n, n);
  if (refine) {
    for (int v = 0; v < n; ++v) d.row(v) = distance_field(mesh, v, true).transpose();
  } else {
    const EdgeGraph graph = build_graph(mesh);
    for (int v = 0; v < n; ++v) {
      Eigen::VectorXd row = dijkstra(graph, n, v);
      if (!row.allFinite()) fail(ErrorCode::DisconnectedMesh, "mesh is not connected");
      d.row(v) = row.transpose();
    }
  }
  return d;
}

}  // namespace beltrami
