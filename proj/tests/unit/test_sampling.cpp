#include <algorithm>
#include <set>

#include "core/errors.hpp"
#include "core/geodesics.hpp"
#include "core/sampling.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace beltrami;

TEST_CASE("FPS with p=1 returns just the seed") {
  const auto mesh = fixtures::icosahedron();
  const auto s = farthest_point_sample(mesh, 1, 3);
  CHECK(s.indices == std::vector<int>{3});
  CHECK(s.method == SampleSet::Method::FarthestPoint);
}

TEST_CASE("FPS with p=n enumerates all vertices, seed first") {
  const auto mesh = fixtures::icosahedron();
  const auto s = farthest_point_sample(mesh, 12, 0);
  CHECK(s.indices.front() == 0);
  std::set<int> unique(s.indices.begin(), s.indices.end());
  CHECK(unique.size() == 12);
}

TEST_CASE("FPS second sample on the icosahedron is the antipode (brute force)") {
  const auto mesh = fixtures::icosahedron();
  const auto s = farthest_point_sample(mesh, 2, 0);

  // Independent oracle: Floyd-Warshall distances, pick the max-min candidate.
  const auto all = oracles::floyd_warshall(mesh);
  int best = -1;
  double best_dist = -1.0;
  for (int v = 0; v < 12; ++v) {
    if (v == 0) continue;
    if (all(0, v) > best_dist) {
      best_dist = all(0, v);
      best = v;
    }
  }
  CHECK(s.indices[1] == best);
  // And that candidate is the geometric antipode of vertex 0.
  CHECK((mesh.vertex(best) + mesh.vertex(0)).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("FPS with p=k is a prefix of FPS with p=k+1") {
  const auto mesh = fixtures::icosphere(2);
  const auto s5 = farthest_point_sample(mesh, 5, 7);
  const auto s6 = farthest_point_sample(mesh, 6, 7);
  CHECK(std::equal(s5.indices.begin(), s5.indices.end(), s6.indices.begin()));
}

TEST_CASE("FPS covering radius is non-increasing in p") {
  const auto mesh = fixtures::icosphere(2);
  const auto all = oracles::floyd_warshall(mesh);
  double previous = std::numeric_limits<double>::infinity();
  for (int p : {2, 4, 8, 16, 32}) {
    const auto s = farthest_point_sample(mesh, p, 0);
    double covering = 0.0;
    for (int v = 0; v < mesh.vertex_count(); ++v) {
      double nearest = std::numeric_limits<double>::infinity();
      for (int idx : s.indices) nearest = std::min(nearest, all(v, idx));
      covering = std::max(covering, nearest);
    }
    CHECK(covering <= previous + 1e-12);
    previous = covering;
  }
}

TEST_CASE("FPS rejects out-of-range counts") {
  const auto mesh = fixtures::icosahedron();
  for (int bad : {0, -1, 13}) {
    try {
      farthest_point_sample(mesh, bad, 0);
      FAIL("expected InvalidCount");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidCount);
    }
  }
}

TEST_CASE("FPS accepts a caller-provided distance oracle") {
  const auto mesh = fixtures::icosahedron();
  const auto all = oracles::floyd_warshall(mesh);
  const auto oracle = [&all](int src) { return all.row(src).transpose().eval(); };
  const auto via_oracle = farthest_point_sample(mesh, 6, 0, oracle);
  const auto via_dijkstra = farthest_point_sample(mesh, 6, 0);
  CHECK(via_oracle.indices == via_dijkstra.indices);
}
