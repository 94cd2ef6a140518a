#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qbd {

using HalfEdge = std::int32_t;
using VertexId = std::int32_t;
using FaceId = std::int32_t;

inline constexpr std::int32_t kNone = -1;

/// Rooted combinatorial map on the sphere, stored as two permutations of the
/// half-edges: `twin` (fixed-point-free involution) and `next_at_vertex`
/// (rotation around the origin vertex). Faces are the orbits of
/// `next_in_face(h) = next_at_vertex(twin(h))`; a half-edge is incident to the
/// face lying on its right.
///
/// The map without any edge (a single vertex) is represented with zero
/// half-edges; it has one vertex and one face.
class PlaneMap {
 public:
  PlaneMap() = default;

  /// Validates and builds. Throws MalformedPermutation, Disconnected or
  /// NonPlanar.
  static PlaneMap build(std::vector<HalfEdge> twin, std::vector<HalfEdge> next_at_vertex,
                        HalfEdge root, std::optional<VertexId> point = std::nullopt);
  static PlaneMap vertex_map();
  /// Two vertices joined by one edge, rooted at half-edge 0 (origin vertex 0).
  static PlaneMap edge_map();

  int half_edge_count() const { return static_cast<int>(twin_.size()); }
  int edge_count() const { return half_edge_count() / 2; }
  int vertex_count() const { return static_cast<int>(vertex_rep_.size()); }
  int face_count() const { return static_cast<int>(face_rep_.size()); }
  int euler_characteristic() const { return vertex_count() - edge_count() + face_count(); }

  HalfEdge twin(HalfEdge h) const { return twin_[h]; }
  HalfEdge next_at_vertex(HalfEdge h) const { return next_[h]; }
  HalfEdge prev_at_vertex(HalfEdge h) const { return prev_[h]; }
  HalfEdge next_in_face(HalfEdge h) const { return next_[twin_[h]]; }
  HalfEdge prev_in_face(HalfEdge h) const { return twin_[prev_[h]]; }

  VertexId origin(HalfEdge h) const { return origin_[h]; }
  VertexId target(HalfEdge h) const { return origin_[twin_[h]]; }
  FaceId face(HalfEdge h) const { return face_[h]; }

  /// Some half-edge leaving `v` (kNone for the vertex map).
  HalfEdge vertex_half_edge(VertexId v) const { return vertex_rep_[v]; }
  HalfEdge face_half_edge(FaceId f) const { return face_rep_[f]; }
  int degree(VertexId v) const { return vertex_degree_[v]; }
  int face_degree(FaceId f) const { return face_degree_[f]; }

  HalfEdge root() const { return root_; }
  std::optional<VertexId> point() const { return point_; }

  std::span<const HalfEdge> twins() const { return twin_; }
  std::span<const HalfEdge> rotations() const { return next_; }

  PlaneMap with_root(HalfEdge root) const;
  PlaneMap with_point(std::optional<VertexId> point) const;

  /// Neighbour vertex ids of `v`, one per incident half-edge, in rotation order.
  std::vector<VertexId> neighbours(VertexId v) const;

 private:
  void index_orbits();

  std::vector<HalfEdge> twin_;
  std::vector<HalfEdge> next_;
  std::vector<HalfEdge> prev_;
  std::vector<VertexId> origin_;
  std::vector<FaceId> face_;
  std::vector<HalfEdge> vertex_rep_;
  std::vector<HalfEdge> face_rep_;
  std::vector<int> vertex_degree_;
  std::vector<int> face_degree_;
  HalfEdge root_ = kNone;
  std::optional<VertexId> point_;
};

/// Mirror image: rotations reversed. The root becomes the reverse of the
/// half-edge preceding it in its face, so a boundary root keeps the external
/// face on its right and the boundary is traversed the other way.
PlaneMap mirror(const PlaneMap& m);

/// Breadth-first graph distances from `source`; unreachable entries cannot
/// occur in a connected map.
std::vector<int> graph_distances(const PlaneMap& m, VertexId source);

/// Quadrangulation with a boundary: every face but `external_face` has degree
/// 4. The external face is the face on the right of the root. `rho` may be
/// kNone for unpointed pieces (complements, non-core components).
struct PointedBoundaryQuad {
  PlaneMap map;
  FaceId external_face = kNone;
  VertexId rho = kNone;
  int area = 0;
  int perimeter = 0;
};

/// Throws MalformedQuadrangulation if an inner face does not have degree 4 or
/// the external face has odd degree.
PointedBoundaryQuad make_boundary_quad(PlaneMap m, VertexId rho);

struct BoundaryCorner {
  VertexId vertex;
  HalfEdge half_edge;  // boundary half-edge leaving `vertex`
};

struct BoundaryWalk {
  std::vector<BoundaryCorner> corners;
  bool simple = true;
};

/// Corners of the external face in contour order, starting at the origin of
/// the root.
BoundaryWalk boundary_walk(const PointedBoundaryQuad& q);

/// Canonical code of the rooted map: breadth-first relabeling from the root
/// through `next_at_vertex` then `twin`. The point (if any) and the extra
/// `marks` are appended as canonical vertex ranks, in order. Equal codes iff
/// root-, point- and mark-preserving isomorphism.
std::string canonical_code(const PlaneMap& m, std::span<const VertexId> marks = {});

/// Rooted code ignoring the point.
std::string rooted_code(const PlaneMap& m);

/// Map of a straight-line drawing: edge k gives half-edges 2k (first ->
/// second) and 2k + 1; rotations are read counterclockwise from the
/// coordinates. Rooted at half-edge `root`.
PlaneMap map_from_drawing(std::span<const std::pair<double, double>> points,
                          std::span<const std::pair<int, int>> edges, HalfEdge root);

void write_planemap(std::ostream& out, const PlaneMap& m);
PlaneMap read_planemap(std::istream& in);
std::string to_text(const PlaneMap& m);
PlaneMap from_text(const std::string& text);

}  // namespace qbd
