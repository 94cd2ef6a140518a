#pragma once

#include <vector>

#include "qbd/encoder.hpp"
#include "qbd/planemap.hpp"

namespace qbd {

/// Tree corners of the bounded face in contour order, c_0 being the first
/// corner of the first tree. Nodes are numbered globally: trees in order of
/// their downstep, preorder inside each tree.
struct CornerSequence {
  std::vector<int> node;   // c_k -> global node
  std::vector<int> label;  // lambda(c_k)
  int lambda_star = 0;     // min label - 1
  int size() const { return static_cast<int>(node.size()); }
};

/// Global node bookkeeping of a labeled treed bridge.
struct ForestNodes {
  std::vector<int> tree;         // node -> tree index
  std::vector<int> parent;       // node -> parent node, -1 at tree roots
  std::vector<int> label;        // node -> lambda
  std::vector<int> first_node;   // tree index -> global id of its root
};

ForestNodes forest_nodes(const LabeledTreedBridge& ltb);
CornerSequence contour_corners(const LabeledTreedBridge& ltb);

/// Output of the construction together with the back-references to the
/// encoding object.
struct BijectionResult {
  PointedBoundaryQuad quad;  // pointed at rho
  ForestNodes nodes;
  CornerSequence corners;
  std::vector<int> successor;        // corner index, or -1 for c_infinity
  std::vector<VertexId> node_vertex; // global node -> map vertex
  std::vector<int> vertex_node;      // map vertex -> global node, -1 for rho
  std::vector<int> vertex_label;     // lambda on map vertices, lambda_star at rho
  std::vector<int> first_corner;     // map vertex -> smallest k with c_k on it; N for rho
  std::vector<HalfEdge> boundary;    // h_0 .. h_{p-1}, h_0 = root
  std::vector<int> tree_positions;   // downstep index of each tree
  int edge_count = 0;                // m
  int perimeter = 0;                 // p
};

/// Throws BijectionInternal if the output is not a quadrangulation whose
/// boundary matches the cycle (an implementation bug, never bad input).
BijectionResult build_quadrangulation(const LabeledTreedBridge& ltb);

/// d(v, rho) == lambda(v) - lambda_star for every vertex, using `labels`
/// (defaults to the result's own table).
bool verify_label_distance(const BijectionResult& b);
bool verify_label_distance(const BijectionResult& b, const std::vector<int>& labels);

/// T(0..p): T(j) = smallest k with c_k on the vertex of rho_j (N if that
/// vertex is rho itself), T(p) = N.
std::vector<int> time_change_T(const BijectionResult& b);

struct LabelProcesses {
  std::vector<int> B;
  std::vector<int> L;
};

/// B(s) = lambda(rho_{floor(p s)}), L(s) = lambda(c_{floor((N-1) s)}) on the
/// grid s = g / (grid_points - 1).
LabelProcesses label_processes(const LabeledTreedBridge& ltb, int grid_points);

}  // namespace qbd
