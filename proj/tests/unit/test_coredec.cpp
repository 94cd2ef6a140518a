#include <algorithm>
#include <map>
#include <numeric>

#include "doctest.h"
#include "qbd/coredec.hpp"
#include "qbd/error.hpp"
#include "test_support.hpp"

using namespace qbd;

namespace {

// Areas of the classes of inner faces connected through shared edges.
std::vector<int> face_block_areas(const PointedBoundaryQuad& q) {
  const PlaneMap& m = q.map;
  std::vector<int> parent(m.face_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (HalfEdge h = 0; h < m.half_edge_count(); ++h) {
    const FaceId f = m.face(h), g = m.face(m.twin(h));
    if (f != q.external_face && g != q.external_face) parent[find(f)] = find(g);
  }
  std::map<int, int> size;
  for (FaceId f = 0; f < m.face_count(); ++f)
    if (f != q.external_face) ++size[find(f)];
  std::vector<int> out;
  for (auto [root, s] : size) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("simple boundary is its own core") {
  const auto q = make_boundary_quad(test::square(), 0);
  const auto d = decompose(q);
  REQUIRE(d.components.size() == 1);
  const auto c = core(d);
  REQUIRE(c.has_value());
  CHECK(canonical_code(c->quad.map) == canonical_code(q.map));
  CHECK(c->quad.area == 1);
  CHECK(c->quad.perimeter == 4);
}

TEST_CASE("a pinch splits the boundary and ties give the cemetery point") {
  const auto q = make_boundary_quad(test::two_squares_sharing_a_vertex(), 0);
  const auto d = decompose(q);
  REQUIRE(d.components.size() == 2);
  for (const auto& c : d.components) {
    CHECK(c.quad.area == 1);
    CHECK(c.quad.perimeter == 4);
  }
  CHECK_FALSE(core(d).has_value());
  CHECK(area_of(core(d)) == 0);
  CHECK(perimeter_of(core(d)) == 0);
}

TEST_CASE("pendant edge is a component of area zero") {
  const std::vector<std::pair<double, double>> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {-1, -1}};
  const std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}};
  const auto q = make_boundary_quad(map_from_drawing(pts, edges, 0), 2);
  const auto d = decompose(q);
  REQUIRE(d.components.size() == 2);
  const auto c = core(d);
  REQUIRE(c.has_value());
  CHECK(c->quad.area == 1);
  CHECK(c->quad.rho != kNone);
  // pointed at the tip of the pendant edge, the square no longer carries rho
  const auto q2 = make_boundary_quad(map_from_drawing(pts, edges, 0), 4);
  CHECK_FALSE(core(q2).has_value());
}

TEST_CASE("decomposition of sampled maps") {
  Rng rng(31);
  for (int trial = 0; trial < 400; ++trial) {
    const int p = 2 * static_cast<int>(rng.uniform_int(1, 12));
    const int m = static_cast<int>(rng.uniform_int(0, 60));
    const auto b = build_quadrangulation(sample_treed_bridge(p, m, rng));
    const auto d = decompose(b.quad);
    int area = 0, perim = 0, pointed = 0;
    std::vector<int> seen(p, 0), positive;
    for (const auto& c : d.components) {
      area += c.quad.area;
      perim += c.quad.perimeter;
      if (c.quad.rho != kNone) ++pointed;
      if (c.quad.area > 0) positive.push_back(c.quad.area);
      CHECK(boundary_walk(c.quad).simple);
      for (int j : c.boundary_positions) ++seen[j];
      CHECK(c.boundary_positions.front() == *std::min_element(c.boundary_positions.begin(), c.boundary_positions.end()));
    }
    CHECK(area == m);
    CHECK(perim == p);
    CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
    std::sort(positive.begin(), positive.end());
    CHECK(positive == face_block_areas(b.quad));
    CHECK(pointed >= 1);

    const auto c = core(d);
    if (c) {
      const auto t = time_change_tables(b, c);
      CHECK(t.J.size() == static_cast<std::size_t>(c->quad.perimeter));
      for (std::size_t k = 0; k < t.J.size(); ++k) {
        CHECK(t.J[k] <= c->boundary_positions[k]);
        CHECK(b.quad.map.origin(b.boundary[t.J[k]]) == b.quad.map.origin(b.boundary[c->boundary_positions[k]]));
      }
    } else {
      CHECK_THROWS_AS(time_change_tables(b, c), Error);
    }
  }
}

TEST_CASE("core statistics are reproducible") {
  const auto a = core_statistics(200, 1.0, 20, 9);
  const auto b = core_statistics(200, 1.0, 20, 9);
  CHECK(a.area_ratios == b.area_ratios);
  CHECK(a.p_n == 2 * static_cast<int>(std::lround(std::sqrt(400.0))));
  CHECK(a.mean_area_ratio > 0);
  CHECK(a.mean_area_ratio <= 1);
  CHECK_THROWS_AS(core_statistics(0, 1.0, 5, 1), Error);
}
