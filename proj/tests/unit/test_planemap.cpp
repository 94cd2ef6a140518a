#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "qbd/bijection.hpp"
#include "qbd/error.hpp"
#include "qbd/planemap.hpp"
#include "test_support.hpp"

using namespace qbd;

TEST_CASE("edge map has two vertices and one face") {
  const auto m = PlaneMap::edge_map();
  CHECK(m.vertex_count() == 2);
  CHECK(m.edge_count() == 1);
  CHECK(m.face_count() == 1);
  CHECK(m.euler_characteristic() == 2);
  const auto d = graph_distances(m, 0);
  CHECK(d == std::vector<int>{0, 1});
}

TEST_CASE("four-cycle drawn in the plane") {
  const auto m = test::square();
  CHECK(m.vertex_count() == 4);
  CHECK(m.edge_count() == 4);
  CHECK(m.face_count() == 2);
  for (FaceId f = 0; f < 2; ++f) CHECK(m.face_degree(f) == 4);
  auto d = graph_distances(m, 0);
  std::sort(d.begin(), d.end());
  CHECK(d == std::vector<int>{0, 1, 1, 2});

  const auto q = make_boundary_quad(m, 0);
  CHECK(q.area == 1);
  CHECK(q.perimeter == 4);
  const auto walk = boundary_walk(q);
  CHECK(walk.corners.size() == 4);
  CHECK(walk.simple);
  CHECK(walk.corners[0].vertex == m.origin(m.root()));
  // the external face lies to the right of the root: walking along the
  // bottom side eastwards keeps the outside to the south
  CHECK(m.origin(m.root()) == 0);
  CHECK(m.target(m.root()) == 1);
}

TEST_CASE("malformed inputs are rejected") {
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ConfigError;
  };
  CHECK(kind_of([] { PlaneMap::build({0, 1}, {0, 1}, 0); }) == ErrorKind::MalformedPermutation);
  CHECK(kind_of([] { PlaneMap::build({1, 0}, {0, 0}, 0); }) == ErrorKind::MalformedPermutation);
  CHECK(kind_of([] { PlaneMap::build({1, 0, 3, 2}, {0, 1, 2, 3}, 0); }) == ErrorKind::Disconnected);
  // two interleaved loops at one vertex live on the torus
  CHECK(kind_of([] { PlaneMap::build({1, 0, 3, 2}, {2, 3, 1, 0}, 0); }) == ErrorKind::NonPlanar);
}

TEST_CASE("pinched boundary is detected") {
  const auto m = test::two_squares_sharing_a_vertex();
  const auto q = make_boundary_quad(m, 0);
  CHECK(q.area == 2);
  CHECK(q.perimeter == 8);
  CHECK_FALSE(boundary_walk(q).simple);
}

TEST_CASE("canonical code ignores half-edge names") {
  Rng rng(11);
  std::mt19937_64 shuffle_rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 2 * static_cast<int>(rng.uniform_int(1, 5));
    const int m = static_cast<int>(rng.uniform_int(0, 12));
    const auto b = build_quadrangulation(sample_treed_bridge(p, m, rng));
    const auto& map = b.quad.map;
    const int n = map.half_edge_count();
    std::vector<HalfEdge> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), shuffle_rng);
    std::vector<HalfEdge> twin(n), next(n);
    for (HalfEdge h = 0; h < n; ++h) {
      twin[perm[h]] = perm[map.twin(h)];
      next[perm[h]] = perm[map.next_at_vertex(h)];
    }
    auto relabeled = PlaneMap::build(twin, next, perm[map.root()]);
    relabeled = relabeled.with_point(relabeled.origin(perm[map.vertex_half_edge(*map.point())]));
    CHECK(canonical_code(relabeled) == canonical_code(map));
    CHECK(rooted_code(relabeled) == rooted_code(map));
    if (n > 2) {
      // moving the root generally changes the rooted map
      const auto moved = map.with_root(map.next_in_face(map.root()));
      CHECK(canonical_code(mirror(mirror(moved))) == canonical_code(moved));
    }
  }
  CHECK(canonical_code(PlaneMap::edge_map()) != canonical_code(test::square()));
}

TEST_CASE("distances change by at most one along edges") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto b = build_quadrangulation(sample_treed_bridge(8, 30, rng));
    const auto& m = b.quad.map;
    const auto d0 = graph_distances(m, 0);
    for (HalfEdge h = 0; h < m.half_edge_count(); ++h) CHECK(std::abs(d0[m.origin(h)] - d0[m.target(h)]) <= 1);
    const VertexId a = static_cast<VertexId>(rng.uniform_int(0, m.vertex_count() - 1));
    const VertexId c = static_cast<VertexId>(rng.uniform_int(0, m.vertex_count() - 1));
    const auto da = graph_distances(m, a);
    const auto dc = graph_distances(m, c);
    CHECK(da[c] <= da[0] + d0[c]);
    CHECK(dc[a] == da[c]);
  }
}

TEST_CASE("text serialization round-trips") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto b = build_quadrangulation(sample_treed_bridge(6, 10, rng));
    const std::string text = to_text(b.quad.map);
    const auto back = from_text(text);
    CHECK(to_text(back) == text);
    CHECK(canonical_code(back) == canonical_code(b.quad.map));
  }
  CHECK(to_text(from_text(to_text(PlaneMap::edge_map()))) == to_text(PlaneMap::edge_map()));
}

TEST_CASE("simple boundaries satisfy the vertex count identity") {
  Rng rng(23);
  int seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto b = build_quadrangulation(sample_treed_bridge(4, 6, rng));
    if (!boundary_walk(b.quad).simple) continue;
    ++seen;
    CHECK(b.quad.map.vertex_count() == b.quad.area + b.quad.perimeter / 2 + 1);
  }
  CHECK(seen > 0);
}
