#include "qbd/coredec.hpp"

#include <algorithm>
#include <cmath>

#include "qbd/encoder.hpp"
#include "qbd/error.hpp"
#include "qbd/parallel.hpp"
#include "qbd/params.hpp"

namespace qbd {

BoundaryDecomposition decompose(const PointedBoundaryQuad& q) {
  const PlaneMap& m = q.map;
  const int n = m.half_edge_count();
  const auto walk = boundary_walk(q);
  const int p = static_cast<int>(walk.corners.size());
  std::vector<int> position(n, -1);
  for (int j = 0; j < p; ++j) position[walk.corners[j].half_edge] = j;

  // Cut every boundary vertex into its wedges: the wedge opened by h_j runs
  // counterclockwise until the next half-edge would be another boundary one.
  std::vector<HalfEdge> next(m.rotations().begin(), m.rotations().end());
  for (int j = 0; j < p; ++j) {
    const HalfEdge start = walk.corners[j].half_edge;
    HalfEdge g = start;
    while (position[m.next_at_vertex(g)] < 0) g = m.next_at_vertex(g);
    next[g] = start;
  }

  std::vector<int> comp(n, -1);
  std::vector<std::vector<HalfEdge>> members;
  for (int j = 0; j < p; ++j) {
    const HalfEdge seed = walk.corners[j].half_edge;
    if (comp[seed] >= 0) continue;
    const int c = static_cast<int>(members.size());
    members.emplace_back();
    std::vector<HalfEdge> stack{seed};
    comp[seed] = c;
    while (!stack.empty()) {
      const HalfEdge h = stack.back();
      stack.pop_back();
      members[c].push_back(h);
      for (HalfEdge g : {m.twin(h), next[h]}) {
        if (comp[g] < 0) {
          comp[g] = c;
          stack.push_back(g);
        }
      }
    }
  }

  BoundaryDecomposition d;
  for (auto& hs : members) {
    std::sort(hs.begin(), hs.end());
    std::vector<HalfEdge> local(n, kNone);
    for (std::size_t i = 0; i < hs.size(); ++i) local[hs[i]] = static_cast<HalfEdge>(i);
    std::vector<HalfEdge> twin(hs.size()), rot(hs.size());
    HalfEdge root = kNone;
    int first = p;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      twin[i] = local[m.twin(hs[i])];
      rot[i] = local[next[hs[i]]];
      if (position[hs[i]] >= 0 && position[hs[i]] < first) {
        first = position[hs[i]];
        root = static_cast<HalfEdge>(i);
      }
    }
    BoundaryComponent bc;
    PlaneMap piece = PlaneMap::build(std::move(twin), std::move(rot), root);
    bc.half_edge_to_q = hs;
    bc.vertex_to_q.assign(piece.vertex_count(), kNone);
    VertexId rho = kNone;
    for (VertexId v = 0; v < piece.vertex_count(); ++v) {
      bc.vertex_to_q[v] = m.origin(hs[piece.vertex_half_edge(v)]);
      if (bc.vertex_to_q[v] == q.rho) rho = v;
    }
    bc.quad = make_boundary_quad(std::move(piece), rho);
    HalfEdge h = bc.quad.map.root();
    do {
      bc.boundary_positions.push_back(position[hs[h]]);
      h = bc.quad.map.next_in_face(h);
    } while (h != bc.quad.map.root());
    if (static_cast<int>(bc.boundary_positions.size()) != bc.quad.perimeter ||
        std::find(bc.boundary_positions.begin(), bc.boundary_positions.end(), -1) != bc.boundary_positions.end())
      throw Error(ErrorKind::MalformedQuadrangulation, "component boundary does not come from the boundary of q");
    d.components.push_back(std::move(bc));
  }
  return d;
}

CoreResult core(const BoundaryDecomposition& d) {
  int best = -1;
  int ties = 0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    const int a = d.components[i].quad.area;
    if (a > best) {
      best = a;
      ties = 1;
      arg = i;
    } else if (a == best) {
      ++ties;
    }
  }
  if (ties != 1 || d.components[arg].quad.rho == kNone) return std::nullopt;
  return d.components[arg];
}

CoreResult core(const PointedBoundaryQuad& q) { return core(decompose(q)); }

TimeChangeTables time_change_tables(const BijectionResult& b, const CoreResult& c) {
  if (!c) throw Error(ErrorKind::CoreUndefined, "the core is the cemetery point");
  TimeChangeTables t;
  t.T = time_change_T(b);
  const auto& m = b.quad.map;
  std::vector<int> first(m.vertex_count(), -1);
  for (int j = b.perimeter - 1; j >= 0; --j) first[m.origin(b.boundary[j])] = j;
  const auto walk = boundary_walk(c->quad);
  for (const auto& corner : walk.corners) t.J.push_back(first[c->vertex_to_q[corner.vertex]]);
  return t;
}

CoreSummary core_statistics(long n, double alpha, int replicates, std::uint64_t seed) {
  if (n < 1 || replicates < 1 || !(alpha > 0))
    throw Error(ErrorKind::PreconditionViolated, "need n >= 1, alpha > 0 and replicates >= 1");
  CoreSummary s;
  s.n = n;
  s.alpha = alpha;
  s.seed = seed;
  s.replicates = replicates;
  s.p_n = perimeter_sequence(n, alpha);
  const Rng base(seed);
  const auto cores = parallel_map(static_cast<std::size_t>(replicates), [&](std::size_t k) {
    Rng rng = base.split(k);
    const auto b = build_quadrangulation(sample_treed_bridge(3 * s.p_n, static_cast<int>(n), rng));
    const auto c = core(b.quad);
    return std::pair<int, int>{c ? area_of(c) : -1, perimeter_of(c)};
  });
  int cemetery = 0;
  for (auto [area, perimeter] : cores) {
    if (area < 0) ++cemetery;
    s.area_ratios.push_back(static_cast<double>(std::max(area, 0)) / static_cast<double>(n));
    s.perim_ratios.push_back(static_cast<double>(perimeter) / s.p_n);
  }
  auto mean_se = [](const std::vector<double>& xs, double& mean, double& se) {
    double sum = 0, sq = 0;
    for (double x : xs) sum += x;
    mean = sum / xs.size();
    for (double x : xs) sq += (x - mean) * (x - mean);
    se = xs.size() > 1 ? std::sqrt(sq / (xs.size() - 1) / xs.size()) : 0.0;
  };
  s.frac_cemetery = static_cast<double>(cemetery) / replicates;
  mean_se(s.area_ratios, s.mean_area_ratio, s.se_area_ratio);
  mean_se(s.perim_ratios, s.mean_perim_ratio, s.se_perim_ratio);
  return s;
}

}  // namespace qbd
