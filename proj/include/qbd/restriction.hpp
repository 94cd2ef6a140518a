#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbd/bijection.hpp"
#include "qbd/coredec.hpp"
#include "qbd/planemap.hpp"

namespace qbd {

struct RestrictionParams {
  long n = 0;
  int p_n = 0;
  double eps = 0;

  int lower_index() const;  // floor((1/3 - eps) p_n)
  int upper_index() const;  // floor(p_n / 3), the target t_{1/3}
};

/// Restriction map with its complement. Vertex ids of `map` and
/// `complement` map back to the input quadrangulation.
struct Restriction {
  PointedBoundaryQuad map;     // pointed at rho, rooted like the input
  VertexId v_minus = kNone;    // in map
  VertexId v_plus = kNone;
  PlaneMap complement;         // rooted at the first boundary edge of the removed part
  VertexId complement_v_minus = kNone;
  VertexId complement_v_plus = kNone;
  int complement_area = 0;
  int r = 0;
  int i_minus = 0;             // boundary numbers of v^- and v^+ in the input
  int i_plus = 0;
  int p_right = 0;
  int p_in = 0;
  int p_left = 0;
  bool complete = false;       // the complement is the one-edge map
  bool reversed = false;
  std::vector<VertexId> map_to_q;
  std::vector<VertexId> complement_to_q;
  std::vector<HalfEdge> common;  // boundary half-edges of `map` from v^- to v^+ (forward only)

  /// Canonical code of the map pointed at rho with marks v^-, v^+.
  std::string code() const;
};

/// nullopt is the cemetery point.
using RestrictionOutcome = std::optional<Restriction>;

inline const std::string& cemetery_code() {
  static const std::string code = "cemetery";
  return code;
}
inline std::string outcome_code(const RestrictionOutcome& o) { return o ? o->code() : cemetery_code(); }

/// Inner faces incident to a vertex at distance <= ell - 1 from rho (one flag
/// per face id; the external face is never included).
std::vector<char> ball(const PointedBoundaryQuad& q, int ell);

/// Throws PreconditionViolated unless the boundary is simple, 2p >= p_n and
/// 0 < eps < 1/3.
RestrictionOutcome restrict_map(const PointedBoundaryQuad& q, const RestrictionParams& params);

/// Same construction with the boundary numbered the other way round; the
/// result is expressed in the orientation of q.
RestrictionOutcome restrict_reversed(const PointedBoundaryQuad& q, const RestrictionParams& params);

/// Glues `filler` on the common boundary of a forward restriction. The
/// filler's boundary, read from its root, is the new outer stretch from v^-
/// to v^+ followed by the p_in edges glued back to v^-. The one-edge map
/// fills the complete case. Throws PerimeterMismatch.
PointedBoundaryQuad complement_reglue(const Restriction& r, const PlaneMap& filler);

/// The complement as a filler, in the convention of complement_reglue.
PlaneMap complement_as_filler(const Restriction& r);

/// Simple-boundary strip of k unit squares (perimeter 2k + 2), rooted at the
/// half-edge `root_offset` steps after the corner of the strip.
PlaneMap ladder_strip(int k, int root_offset = 0);

/// Throws CemeteryInput on the cemetery point.
bool is_good(const RestrictionOutcome& o, const RestrictionParams& params, double delta);

struct CertificateSets {
  std::vector<int> S;     // global tree nodes
  std::vector<int> S_ge;
  std::vector<int> S_eq;
  int M_low = 0;
  int M_high = 0;
  int h = 0;              // min shifted label over rho_k, J(a) <= k <= J(b)
  int J_minus = 0;
  int J_plus = 0;
};

/// Throws CemeteryInput for the cemetery point and CoreUndefined when the
/// core is.
CertificateSets certificate_sets(const BijectionResult& b, const CoreResult& core, const RestrictionOutcome& o,
                                 const RestrictionParams& params);

struct BoundsCheck {
  bool volume_sandwich = false;
  bool pin_bound = false;
  bool gh_bound = false;
  bool s_ge_disjoint = false;
  bool complement_in_s = false;  // all but at most two complement vertices in S
  bool h_identity = false;       // h in {r, r + 1}
  int distortion = 0;
  int merge_label = 0;           // shifted label of the merging vertex
  bool minus_is_tree_root = false;  // the corner rho_{J(i^-)} is on the root of a tree
  bool all() const { return volume_sandwich && pin_bound && gh_bound && s_ge_disjoint && complement_in_s; }
};

BoundsCheck check_bounds(const BijectionResult& b, const CoreResult& core, const RestrictionOutcome& o,
                         const CertificateSets& certs);

/// Distortion of the relation R between the vertex sets of a and b: the max
/// over pairs of |d_a(x, x') - d_b(y, y')|. Throws NotACorrespondence if some
/// vertex of either map is not covered.
int correspondence_distortion(const PlaneMap& a, const PlaneMap& b,
                              const std::vector<std::pair<VertexId, VertexId>>& relation);

}  // namespace qbd
