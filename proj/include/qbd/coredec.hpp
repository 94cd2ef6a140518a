#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qbd/bijection.hpp"
#include "qbd/planemap.hpp"

namespace qbd {

/// One simple-boundary piece obtained by cutting the pinch vertices of the
/// boundary, with maps back to the original quadrangulation.
struct BoundaryComponent {
  PointedBoundaryQuad quad;              // pointed iff it contains a copy of rho
  std::vector<VertexId> vertex_to_q;     // component vertex -> vertex of q
  std::vector<HalfEdge> half_edge_to_q;  // component half-edge -> half-edge of q
  std::vector<int> boundary_positions;   // k-th boundary step -> index j in the walk of q
};

struct BoundaryDecomposition {
  std::vector<BoundaryComponent> components;  // ordered by first boundary position
};

/// Components are rooted at their first boundary half-edge in the walk of q.
BoundaryDecomposition decompose(const PointedBoundaryQuad& q);

/// Core of (q, rho): the unique component of maximal area when it contains
/// rho; nullopt stands for the cemetery point.
using CoreResult = std::optional<BoundaryComponent>;
CoreResult core(const PointedBoundaryQuad& q);
CoreResult core(const BoundaryDecomposition& d);

inline int area_of(const CoreResult& c) { return c ? c->quad.area : 0; }
inline int perimeter_of(const CoreResult& c) { return c ? c->quad.perimeter : 0; }

struct TimeChangeTables {
  std::vector<int> T;  // indexed 0..p
  std::vector<int> J;  // indexed by core boundary position
};

/// Throws CoreUndefined when the core is the cemetery point.
TimeChangeTables time_change_tables(const BijectionResult& b, const CoreResult& c);

struct CoreSummary {
  long n = 0;
  double alpha = 0;
  std::uint64_t seed = 0;
  int replicates = 0;
  int p_n = 0;
  double frac_cemetery = 0;
  double mean_area_ratio = 0;
  double se_area_ratio = 0;
  double mean_perim_ratio = 0;
  double se_perim_ratio = 0;
  std::vector<double> area_ratios;   // per replicate, 0 for the cemetery
  std::vector<double> perim_ratios;
};

/// Monte Carlo over cores of pointed quadrangulations with area n and
/// perimeter 3 p_n. Replicate k uses the stream Rng(seed).split(k).
CoreSummary core_statistics(long n, double alpha, int replicates, std::uint64_t seed);

}  // namespace qbd
