#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "qbd/counting.hpp"
#include "qbd/error.hpp"
#include "qbd/oracle.hpp"
#include "qbd/params.hpp"
#include "qbd/experiments.hpp"
#include "qbd/restriction.hpp"
#include "test_support.hpp"

using namespace qbd;

namespace {

struct Instance {
  BijectionResult b;
  CoreResult core;
  RestrictionParams params;
};

// Samples until the core exists and is long enough for the restriction.
Instance sample_instance(long n, double alpha, double eps, Rng& rng) {
  const int p_n = perimeter_sequence(n, alpha);
  for (;;) {
    Instance inst{build_quadrangulation(sample_treed_bridge(3 * p_n, static_cast<int>(n), rng)), std::nullopt,
                  RestrictionParams{n, p_n, eps}};
    inst.core = core(inst.b.quad);
    if (inst.core && 2 * inst.core->quad.perimeter >= p_n) return inst;
  }
}

}  // namespace

TEST_CASE("ladder strips") {
  for (int k = 1; k <= 6; ++k) {
    const auto m = ladder_strip(k, 3);
    const auto q = make_boundary_quad(m, kNone);
    CHECK(q.area == k);
    CHECK(q.perimeter == 2 * k + 2);
    CHECK(boundary_walk(q).simple);
    CHECK(m.euler_characteristic() == 2);
  }
  CHECK(ladder_strip(0).half_edge_count() == 2);
}

TEST_CASE("ball of the square") {
  const auto q = make_boundary_quad(test::square(), 0);
  const auto b0 = ball(q, 0);
  const auto b1 = ball(q, 1);
  CHECK(std::count(b0.begin(), b0.end(), 1) == 0);
  CHECK(std::count(b1.begin(), b1.end(), 1) == 1);
  CHECK(b1[q.external_face] == 0);
}

TEST_CASE("preconditions") {
  const auto q = make_boundary_quad(test::square(), 0);
  CHECK_THROWS_AS(restrict_map(q, RestrictionParams{1, 4, 0.5}), Error);
  CHECK_THROWS_AS(restrict_map(q, RestrictionParams{1, 10, 0.1}), Error);
  const auto pinched = make_boundary_quad(test::two_squares_sharing_a_vertex(), 0);
  CHECK_THROWS_AS(restrict_map(pinched, RestrictionParams{2, 8, 0.1}), Error);
  CHECK_THROWS_AS(is_good(std::nullopt, RestrictionParams{1, 4, 0.1}, 0.05), Error);
}

TEST_CASE("restriction bookkeeping and regluing the complement") {
  Rng rng(404);
  int restrictions = 0, complete = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const long n = 30 + 10 * (trial % 8);
    const auto inst = sample_instance(n, 1.0, 0.1, rng);
    const auto& q = inst.core->quad;
    const auto o = restrict_map(q, inst.params);
    if (!o) continue;
    ++restrictions;
    if (o->complete) ++complete;
    CHECK(o->p_right + o->p_in + o->p_left == o->map.perimeter);
    CHECK(o->map.area + o->complement_area == q.area);
    CHECK(o->p_right == o->i_minus);
    CHECK(o->p_left == q.perimeter - o->i_plus);
    CHECK(o->i_minus >= inst.params.lower_index());
    CHECK(o->i_minus <= inst.params.upper_index());
    CHECK(o->i_plus > inst.params.upper_index());
    CHECK(boundary_walk(o->map).simple);
    CHECK(o->map.rho != kNone);
    CHECK(o->map_to_q[o->map.rho] == q.rho);

    // the glued-back complement restores the map exactly
    const auto back = complement_reglue(*o, complement_as_filler(*o));
    CHECK(canonical_code(back.map) == canonical_code(q.map));
    CHECK(back.area == q.area);

    // mirrored input, reversed numbering
    const auto mq = make_boundary_quad(mirror(q.map), q.rho);
    const auto rev = restrict_reversed(mq, inst.params);
    REQUIRE(rev.has_value());
    CHECK(rev->reversed);
    CHECK(canonical_code(rev->map.map) == canonical_code(mirror(o->map.map)));
    CHECK(rev->p_in == o->p_in);

    // strips of every admissible length glue into a valid map
    for (int len = 1; len <= 3 + o->p_in / 2; ++len) {
      const auto strip = ladder_strip(len, 0);
      const int pf = 2 * len + 2;
      if (pf - o->p_in < 1) continue;
      const auto glued = complement_reglue(*o, strip);
      CHECK(glued.area == o->map.area + len);
      CHECK(glued.perimeter == o->map.perimeter - o->p_in + (pf - o->p_in));
      CHECK(glued.map.euler_characteristic() == 2);
    }
  }
  CHECK(restrictions > 50);
  MESSAGE("restrictions: " << restrictions << ", complete: " << complete);
}

TEST_CASE("certificates and bounds on sampled cores") {
  Rng rng(77);
  int checked = 0, anchored = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = sample_instance(60, 1.0, 0.1, rng);
    const auto o = restrict_map(inst.core->quad, inst.params);
    if (!o) continue;
    const auto certs = certificate_sets(inst.b, inst.core, o, inst.params);
    CHECK(certs.J_minus <= certs.J_plus);
    CHECK(certs.S_ge.size() <= certs.S.size());
    CHECK(certs.S_eq.size() <= certs.S.size());
    const auto bounds = check_bounds(inst.b, inst.core, o, certs);
    CHECK(bounds.s_ge_disjoint);
    CHECK(bounds.distortion >= 0);
    // rho on the boundary stretch gives h = 0 with r = 1
    if (certs.h > 0) CHECK(bounds.h_identity);
    if (bounds.minus_is_tree_root) {
      CHECK(bounds.volume_sandwich);
      CHECK(bounds.pin_bound);
      CHECK(bounds.complement_in_s);
      CHECK(bounds.gh_bound);
      ++anchored;
    }
    ++checked;
  }
  CHECK(checked > 50);
  CHECK(anchored > 20);
}

TEST_CASE("correspondence distortion") {
  const auto sq = test::square();
  std::vector<std::pair<VertexId, VertexId>> id;
  for (VertexId v = 0; v < 4; ++v) id.push_back({v, v});
  CHECK(correspondence_distortion(sq, sq, id) == 0);
  const auto e = PlaneMap::edge_map();
  std::vector<std::pair<VertexId, VertexId>> collapse{{0, 0}, {1, 1}, {2, 0}, {3, 1}};
  // opposite corners land on the same vertex: |2 - 0|
  CHECK(correspondence_distortion(sq, e, collapse) == 2);
  CHECK_THROWS_AS(correspondence_distortion(sq, e, {{0, 0}, {1, 1}}), Error);
}

namespace {

// Every pointed simple-boundary map of size (n, p), each exactly once.
std::vector<PointedBoundaryQuad> pointed_simple_maps(int n, int p) {
  std::vector<PointedBoundaryQuad> out;
  std::set<std::string> seen;
  for_each_treed_bridge(p, n, [&](const LabeledTreedBridge& ltb) {
    auto b = build_quadrangulation(ltb);
    if (!boundary_walk(b.quad).simple) return;
    const VertexId point[1] = {b.quad.rho};
    if (seen.insert(canonical_code(b.quad.map, point)).second) out.push_back(std::move(b.quad));
  });
  return out;
}

}  // namespace

TEST_CASE("restriction law is exact on small universes") {
  for (auto [n, p] : std::vector<std::pair<int, int>>{{2, 4}, {3, 4}, {2, 6}, {3, 6}}) {
    const auto maps = pointed_simple_maps(n, p);
    CHECK(mpz_class(static_cast<unsigned long>(maps.size())) == pointed_count_simple(n, p));
    const RestrictionParams params{n, 6, 0.1};
    std::map<std::string, long> freq;
    std::map<std::string, Restriction> rep;
    long cemetery = 0;
    for (const auto& q : maps) {
      const auto o = restrict_map(q, params);
      if (!o) {
        ++cemetery;
        continue;
      }
      ++freq[o->code()];
      rep.emplace(o->code(), *o);
    }
    mpq_class total = 0;
    for (const auto& [code, count] : freq) {
      const auto& r = rep.at(code);
      const mpq_class law =
          restriction_probability(r.map.area, r.map.perimeter, r.p_in, r.p_left, n, p, params.p_n);
      mpq_class observed(count, static_cast<long>(maps.size()));
      observed.canonicalize();
      CHECK_MESSAGE(law == observed, "n=" << n << " p=" << p << " " << code);
      total += law;
    }
    mpq_class rest(cemetery, static_cast<long>(maps.size()));
    rest.canonicalize();
    CHECK(total + rest == 1);
  }
}

TEST_CASE("regluing random fillers keeps the restriction") {
  const Rng base(404);
  int hole = 0;
  for (std::uint64_t k = 0; k < 400; ++k) {
    const auto x = reglue_trial(400, 1.0, 0.1, base.split(k).seed());
    if (!x.applicable) continue;
    CHECK(x.reconstructs);
    if (x.filler == "edge" || !(x.complete && x.endpoint_inside)) CHECK(x.restriction_kept);
    if (!x.complete) ++hole;
  }
  CHECK(hole > 30);
}
