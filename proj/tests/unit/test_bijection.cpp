#include <set>

#include "doctest.h"
#include "qbd/bijection.hpp"
#include "qbd/oracle.hpp"

using namespace qbd;

TEST_CASE("smallest instances give the one-edge map") {
  for (const std::vector<int>& labels : {std::vector<int>{0, -1, 0}, std::vector<int>{0, 1, 0}}) {
    LabeledTreedBridge ltb;
    ltb.bridge.labels = labels;
    ltb.tree_positions = downsteps(ltb.bridge);
    ltb.trees = {LabeledTree{}};
    ltb.trees[0].labels = {labels[ltb.tree_positions[0]]};
    const auto b = build_quadrangulation(ltb);
    CHECK(b.quad.area == 0);
    CHECK(b.quad.perimeter == 2);
    CHECK(b.quad.map.vertex_count() == 2);
    CHECK(b.corners.lambda_star == ltb.trees[0].labels[0] - 1);
    CHECK(verify_label_distance(b));
    CHECK(rooted_code(b.quad.map) == rooted_code(PlaneMap::edge_map()));
  }
}

TEST_CASE("distinct treed bridges give distinct pointed maps") {
  for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 0}, {2, 1}, {4, 0}, {4, 1}, {2, 2}, {6, 2}, {4, 3}}) {
    std::set<std::string> codes;
    long count = 0;
    for_each_treed_bridge(p, m, [&](const LabeledTreedBridge& ltb) {
      const auto b = build_quadrangulation(ltb);
      CHECK(b.quad.area == m);
      CHECK(b.quad.perimeter == p);
      CHECK(b.quad.map.euler_characteristic() == 2);
      CHECK(verify_label_distance(b));
      codes.insert(canonical_code(b.quad.map));
      ++count;
    });
    CHECK(static_cast<long>(codes.size()) == count);
  }
}

TEST_CASE("label distance identity on samples") {
  Rng rng(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    const int p = 2 * static_cast<int>(rng.uniform_int(1, 10));
    const int m = static_cast<int>(rng.uniform_int(0, 50));
    const auto b = build_quadrangulation(sample_treed_bridge(p, m, rng));
    REQUIRE(verify_label_distance(b));
  }
}

TEST_CASE("corrupted labels are caught") {
  Rng rng(5);
  const auto b = build_quadrangulation(sample_treed_bridge(6, 12, rng));
  auto labels = b.vertex_label;
  for (VertexId v = 0; v < static_cast<VertexId>(labels.size()); ++v)
    if (v != b.quad.rho) {
      labels[v] += 1;
      break;
    }
  CHECK_FALSE(verify_label_distance(b, labels));
}

TEST_CASE("boundary corners carry the bridge labels") {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const auto ltb = sample_treed_bridge(10, 20, rng);
    const auto b = build_quadrangulation(ltb);
    for (int j = 0; j < 10; ++j) CHECK(b.vertex_label[b.quad.map.origin(b.boundary[j])] == ltb.bridge.labels[j]);
    const auto t = time_change_T(b);
    CHECK(t.size() == 11);
    CHECK(t.back() == b.corners.size());
    for (int j = 0; j < 10; ++j) {
      const VertexId v = b.quad.map.origin(b.boundary[j]);
      if (v == b.quad.rho) {
        CHECK(t[j] == b.corners.size());
      } else {
        CHECK(b.quad.map.origin(2 * t[j]) == v);
        for (int k = 0; k < t[j]; ++k) CHECK(b.node_vertex[b.corners.node[k]] != v);
      }
    }
  }
}

TEST_CASE("label processes") {
  LabeledTreedBridge ltb;
  ltb.bridge.labels = {0, 1, 0};
  ltb.tree_positions = {1};
  LabeledTree t;
  t.labels = {1};
  ltb.trees = {t};
  const auto lp = label_processes(ltb, 3);
  CHECK(lp.B == std::vector<int>{0, 1, 0});
  Rng rng(6);
  const auto big = sample_treed_bridge(20, 40, rng);
  const auto lp2 = label_processes(big, 101);
  CHECK(lp2.B.front() == 0);
  CHECK(lp2.B.back() == 0);
  CHECK(lp2.L.size() == 101);
}
