#include "qbd/restriction.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "qbd/error.hpp"

namespace qbd {

int RestrictionParams::lower_index() const {
  return static_cast<int>(std::floor((1.0 / 3.0 - eps) * p_n + 1e-9));
}

int RestrictionParams::upper_index() const { return p_n / 3; }

std::string Restriction::code() const {
  const VertexId marks[2] = {v_minus, v_plus};
  return canonical_code(map.map, marks);
}

namespace {

constexpr int kFar = INT_MAX / 4;

struct FaceDistances {
  std::vector<int> dist;      // per vertex, from rho
  std::vector<int> face_min;  // per face: min distance over its corners (kFar for the external face)
  std::vector<int> vertex;    // per vertex: min face_min over incident inner faces
};

FaceDistances face_distances(const PointedBoundaryQuad& q) {
  const PlaneMap& m = q.map;
  FaceDistances fd;
  fd.dist = graph_distances(m, q.rho);
  fd.face_min.assign(m.face_count(), kFar);
  for (HalfEdge h = 0; h < m.half_edge_count(); ++h) {
    const FaceId f = m.face(h);
    if (f != q.external_face) fd.face_min[f] = std::min(fd.face_min[f], fd.dist[m.origin(h)]);
  }
  fd.vertex.assign(m.vertex_count(), kFar);
  for (HalfEdge h = 0; h < m.half_edge_count(); ++h) {
    const FaceId f = m.face(h);
    if (f != q.external_face) fd.vertex[m.origin(h)] = std::min(fd.vertex[m.origin(h)], fd.face_min[f]);
  }
  return fd;
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Submap spanned by the half-edges flagged in `keep` (closed under twin); the
// rotation skips dropped half-edges.
struct SubMap {
  std::vector<HalfEdge> to_q;
  std::vector<HalfEdge> local;
  PlaneMap map;
  std::vector<VertexId> vertex_to_q;
};

SubMap submap(const PlaneMap& m, const std::vector<char>& keep, HalfEdge root_in_q) {
  SubMap s;
  s.local.assign(m.half_edge_count(), kNone);
  for (HalfEdge h = 0; h < m.half_edge_count(); ++h) {
    if (keep[h]) {
      s.local[h] = static_cast<HalfEdge>(s.to_q.size());
      s.to_q.push_back(h);
    }
  }
  std::vector<HalfEdge> twin(s.to_q.size()), next(s.to_q.size());
  for (std::size_t i = 0; i < s.to_q.size(); ++i) {
    const HalfEdge h = s.to_q[i];
    twin[i] = s.local[m.twin(h)];
    HalfEdge g = m.next_at_vertex(h);
    while (!keep[g]) g = m.next_at_vertex(g);
    next[i] = s.local[g];
  }
  s.map = PlaneMap::build(std::move(twin), std::move(next), s.local[root_in_q]);
  s.vertex_to_q.resize(s.map.vertex_count());
  for (VertexId v = 0; v < s.map.vertex_count(); ++v) s.vertex_to_q[v] = m.origin(s.to_q[s.map.vertex_half_edge(v)]);
  return s;
}

VertexId local_vertex(const std::vector<VertexId>& to_q, VertexId v) {
  auto it = std::find(to_q.begin(), to_q.end(), v);
  return it == to_q.end() ? kNone : static_cast<VertexId>(it - to_q.begin());
}

}  // namespace

std::vector<char> ball(const PointedBoundaryQuad& q, int ell) {
  const auto fd = face_distances(q);
  std::vector<char> in(q.map.face_count(), 0);
  for (FaceId f = 0; f < q.map.face_count(); ++f) in[f] = f != q.external_face && fd.face_min[f] <= ell - 1;
  return in;
}

RestrictionOutcome restrict_map(const PointedBoundaryQuad& q, const RestrictionParams& params) {
  if (!(params.eps > 0 && params.eps < 1.0 / 3.0))
    throw Error(ErrorKind::PreconditionViolated, "eps must lie in (0, 1/3)");
  if (2 * q.perimeter < params.p_n)
    throw Error(ErrorKind::PreconditionViolated, "perimeter below p_n / 2");
  if (q.rho == kNone) throw Error(ErrorKind::PreconditionViolated, "the map must be pointed");
  const auto walk = boundary_walk(q);
  if (!walk.simple) throw Error(ErrorKind::PreconditionViolated, "the boundary must be simple");

  const PlaneMap& m = q.map;
  const int p = q.perimeter;
  const auto fd = face_distances(q);
  auto bvertex = [&](int k) { return walk.corners[k].vertex; };
  auto bedge = [&](int k) { return walk.corners[k].half_edge; };

  const int a = params.lower_index();
  const int b = params.upper_index();
  int best = kFar;
  for (int k = a; k <= b; ++k) best = std::min(best, fd.vertex[bvertex(k)]);
  if (best >= kFar) return std::nullopt;
  const int r = best + 1;
  int i_minus = -1;
  for (int k = b; k >= a; --k)
    if (fd.vertex[bvertex(k)] <= r - 1) {
      i_minus = k;
      break;
    }
  int i_plus = -1;
  for (int k = b + 1; k < p; ++k)
    if (fd.vertex[bvertex(k)] <= r - 1) {
      i_plus = k;
      break;
    }
  if (i_plus < 0) return std::nullopt;

  auto in_ball = [&](FaceId f) { return f != q.external_face && fd.face_min[f] <= r - 1; };

  Restriction out;
  out.r = r;
  out.i_minus = i_minus;
  out.i_plus = i_plus;

  bool complete = true;
  for (int k = i_minus; k < i_plus; ++k)
    if (!in_ball(m.face(m.twin(bedge(k))))) complete = false;

  if (complete) {
    out.complete = true;
    out.map = q;
    out.map_to_q.resize(m.vertex_count());
    std::iota(out.map_to_q.begin(), out.map_to_q.end(), 0);
    out.v_minus = bvertex(i_minus);
    out.v_plus = bvertex(i_plus);
    out.complement = PlaneMap::edge_map();
    out.complement_v_minus = out.complement.origin(out.complement.root());
    out.complement_v_plus = out.complement.target(out.complement.root());
    out.complement_to_q = {out.v_minus, out.v_plus};
    out.complement_to_q[static_cast<std::size_t>(out.complement_v_minus)] = out.v_minus;
    out.complement_to_q[static_cast<std::size_t>(out.complement_v_plus)] = out.v_plus;
    out.complement_area = 0;
    for (int k = i_minus; k < i_plus; ++k) out.common.push_back(bedge(k));
    out.p_right = i_minus;
    out.p_in = i_plus - i_minus;
    out.p_left = p - i_plus;
    return out;
  }

  // components of the faces outside the ball, glued along shared edges
  const int faces = m.face_count();
  std::vector<int> parent(faces);
  std::iota(parent.begin(), parent.end(), 0);
  auto outside = [&](FaceId f) { return f != q.external_face && !in_ball(f); };
  for (HalfEdge h = 0; h < m.half_edge_count(); ++h) {
    const FaceId f = m.face(h), g = m.face(m.twin(h));
    if (outside(f) && outside(g)) parent[find_root(parent, f)] = find_root(parent, g);
  }
  int target = -1;
  for (int k = i_minus; k < i_plus; ++k) {
    const FaceId f = m.face(m.twin(bedge(k)));
    if (!outside(f)) continue;
    const int c = find_root(parent, f);
    if (target >= 0 && target != c) return std::nullopt;
    target = c;
  }
  std::vector<char> in_c(faces, 0);
  for (FaceId f = 0; f < faces; ++f) in_c[f] = outside(f) && find_root(parent, f) == target;
  auto gone = [&](FaceId f) { return f == q.external_face || in_c[f]; };

  std::vector<char> keep_r(m.half_edge_count(), 0), keep_c(m.half_edge_count(), 0);
  for (HalfEdge h = 0; h < m.half_edge_count(); ++h) {
    const FaceId f = m.face(h), g = m.face(m.twin(h));
    keep_r[h] = !(gone(f) && gone(g));
    keep_c[h] = in_c[f] || in_c[g];
  }

  HalfEdge r_root = m.root();
  if (!keep_r[r_root]) {
    // the root edge belongs to the removed stretch (i^- = 0): use the new
    // boundary edge leaving v^-
    r_root = kNone;
    for (HalfEdge h = 0; h < m.half_edge_count(); ++h)
      if (keep_r[h] && in_c[m.face(h)] && m.origin(h) == bvertex(i_minus)) r_root = h;
    if (r_root == kNone) return std::nullopt;
  }
  SubMap rs = submap(m, keep_r, r_root);
  SubMap cs = submap(m, keep_c, bedge(i_minus));

  out.map_to_q = rs.vertex_to_q;
  out.map = make_boundary_quad(std::move(rs.map), local_vertex(out.map_to_q, q.rho));
  out.v_minus = local_vertex(out.map_to_q, bvertex(i_minus));
  out.v_plus = local_vertex(out.map_to_q, bvertex(i_plus));
  out.complement_to_q = cs.vertex_to_q;
  auto comp = make_boundary_quad(std::move(cs.map), kNone);
  out.complement = comp.map;
  out.complement_area = comp.area;
  out.complement_v_minus = local_vertex(out.complement_to_q, bvertex(i_minus));
  out.complement_v_plus = local_vertex(out.complement_to_q, bvertex(i_plus));
  if (out.map.rho == kNone || out.v_minus == kNone || out.v_plus == kNone || out.complement_v_plus == kNone)
    return std::nullopt;

  const auto rwalk = boundary_walk(out.map);
  int at_minus = -1, at_plus = -1;
  for (int k = 0; k < static_cast<int>(rwalk.corners.size()); ++k) {
    if (rwalk.corners[k].vertex == out.v_minus) at_minus = k;
    if (rwalk.corners[k].vertex == out.v_plus) at_plus = k;
  }
  if (!rwalk.simple || at_minus < 0 || at_plus <= at_minus) return std::nullopt;
  out.p_right = at_minus;
  out.p_in = at_plus - at_minus;
  out.p_left = out.map.perimeter - at_plus;
  for (int k = at_minus; k < at_plus; ++k) out.common.push_back(rwalk.corners[k].half_edge);
  if (out.p_right != i_minus || out.p_left != p - i_plus || out.map.area + out.complement_area != q.area)
    throw Error(ErrorKind::MalformedQuadrangulation, "restriction bookkeeping is inconsistent");
  return out;
}

RestrictionOutcome restrict_reversed(const PointedBoundaryQuad& q, const RestrictionParams& params) {
  const auto mq = make_boundary_quad(mirror(q.map), q.rho);
  auto o = restrict_map(mq, params);
  if (!o) return o;
  o->reversed = true;
  if (!o->complete) {
    o->map = make_boundary_quad(mirror(o->map.map), o->map.rho);
    o->complement = mirror(o->complement);
  } else {
    o->map = q;
  }
  o->common.clear();
  return o;
}

PlaneMap complement_as_filler(const Restriction& r) { return r.complement; }

PointedBoundaryQuad complement_reglue(const Restriction& res, const PlaneMap& filler) {
  if (res.reversed) throw Error(ErrorKind::PreconditionViolated, "regluing expects a forward restriction");
  const PlaneMap& r = res.map.map;
  const int p_in = res.p_in;
  if (static_cast<int>(res.common.size()) != p_in)
    throw Error(ErrorKind::PerimeterMismatch, "common boundary length differs from p_in");
  if (filler.half_edge_count() == 0) throw Error(ErrorKind::PerimeterMismatch, "filler has no edge");
  const int pf = filler.face_degree(filler.face(filler.root()));
  const int outer = pf - p_in;
  if (outer < 1) throw Error(ErrorKind::PerimeterMismatch, "filler perimeter too short for the common boundary");
  if (filler.half_edge_count() == 2) {
    if (p_in != 1) throw Error(ErrorKind::PerimeterMismatch, "the one-edge filler needs p_in = 1");
    return res.map;
  }

  std::vector<HalfEdge> fwalk;
  for (HalfEdge h = filler.root();;) {
    fwalk.push_back(h);
    h = filler.next_in_face(h);
    if (h == filler.root()) break;
  }
  const int nr = r.half_edge_count();
  const int nf = filler.half_edge_count();
  std::vector<HalfEdge> image(nf, kNone);  // filler half-edge -> new id
  std::vector<char> glued(nf, 0);
  for (int t = 0; t < p_in; ++t) {
    const HalfEdge f = fwalk[outer + t];
    const HalfEdge c = res.common[p_in - t - 1];
    image[f] = r.twin(c);
    image[filler.twin(f)] = c;
    glued[f] = glued[filler.twin(f)] = 1;
  }
  int next_id = nr;
  for (HalfEdge g = 0; g < nf; ++g)
    if (image[g] == kNone) image[g] = next_id++;

  std::vector<HalfEdge> twin(next_id), rot(next_id, kNone);
  for (HalfEdge h = 0; h < nr; ++h) twin[h] = r.twin(h);
  for (HalfEdge g = 0; g < nf; ++g)
    if (!glued[g]) twin[image[g]] = image[filler.twin(g)];

  // common vertices of r and their counterparts in the filler
  std::vector<VertexId> r_common(p_in + 1), f_common(p_in + 1);
  for (int t = 0; t < p_in; ++t) r_common[t] = r.origin(res.common[t]);
  r_common[p_in] = r.target(res.common[p_in - 1]);
  for (int t = 0; t <= p_in; ++t) f_common[t] = filler.origin(fwalk[(outer + p_in - t) % pf]);
  std::vector<char> r_is_common(r.vertex_count(), 0), f_is_common(filler.vertex_count(), 0);
  for (VertexId v : r_common) r_is_common[v] = 1;
  for (VertexId v : f_common) f_is_common[v] = 1;

  for (HalfEdge h = 0; h < nr; ++h)
    if (!r_is_common[r.origin(h)]) rot[h] = r.next_at_vertex(h);
  for (HalfEdge g = 0; g < nf; ++g)
    if (!f_is_common[filler.origin(g)]) rot[image[g]] = image[filler.next_at_vertex(g)];

  // boundary half-edge leaving each vertex, in r and in the filler
  std::vector<HalfEdge> r_out(r.vertex_count(), kNone), f_out(filler.vertex_count(), kNone);
  for (HalfEdge h = r.root();;) {
    r_out[r.origin(h)] = h;
    h = r.next_in_face(h);
    if (h == r.root()) break;
  }
  for (HalfEdge g : fwalk) f_out[filler.origin(g)] = g;

  for (int t = 0; t <= p_in; ++t) {
    std::vector<HalfEdge> cycle;
    // open wedge of r: from its outgoing boundary half-edge until the
    // reverse of the incoming one
    const HalfEdge ho = r_out[r_common[t]];
    const HalfEdge hi_rev = r.twin(r.prev_in_face(ho));
    for (HalfEdge h = ho;; h = r.next_at_vertex(h)) {
      cycle.push_back(h);
      if (h == hi_rev) break;
    }
    const HalfEdge fo = f_out[f_common[t]];
    const HalfEdge fi_rev = filler.twin(filler.prev_in_face(fo));
    for (HalfEdge g = fo;; g = filler.next_at_vertex(g)) {
      cycle.push_back(image[g]);
      if (g == fi_rev) break;
    }
    std::vector<HalfEdge> clean;
    for (HalfEdge h : cycle)
      if (clean.empty() || clean.back() != h) clean.push_back(h);
    while (clean.size() > 1 && clean.back() == clean.front()) clean.pop_back();
    for (std::size_t i = 0; i < clean.size(); ++i) rot[clean[i]] = clean[(i + 1) % clean.size()];
  }
  if (std::find(rot.begin(), rot.end(), kNone) != rot.end())
    throw Error(ErrorKind::PerimeterMismatch, "filler does not close up along the common boundary");

  HalfEdge root = r.root();
  if (std::find(res.common.begin(), res.common.end(), root) != res.common.end()) root = image[fwalk[0]];
  PlaneMap glued_map = PlaneMap::build(std::move(twin), std::move(rot), root);
  return make_boundary_quad(std::move(glued_map), res.map.rho);
}

PlaneMap ladder_strip(int k, int root_offset) {
  if (k < 1) return PlaneMap::edge_map();
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i <= k; ++i) pts.push_back({static_cast<double>(i), 0.0});
  for (int i = 0; i <= k; ++i) pts.push_back({static_cast<double>(i), 1.0});
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i) edges.push_back({i, i + 1});
  for (int i = 0; i < k; ++i) edges.push_back({k + 1 + i, k + 2 + i});
  for (int i = 0; i <= k; ++i) edges.push_back({i, k + 1 + i});
  PlaneMap m = map_from_drawing(pts, edges, 0);
  HalfEdge h = m.root();
  const int perimeter = 2 * k + 2;
  for (int s = 0; s < ((root_offset % perimeter) + perimeter) % perimeter; ++s) h = m.next_in_face(h);
  return m.with_root(h);
}

bool is_good(const RestrictionOutcome& o, const RestrictionParams& params, double delta) {
  if (!o) throw Error(ErrorKind::CemeteryInput, "is_good needs a restriction, not the cemetery point");
  constexpr double tol = 1e-9;
  const double pn = params.p_n;
  const double n = static_cast<double>(params.n);
  const bool perim1 = o->p_right >= params.lower_index() && o->p_right <= (1.0 / 3.0 - delta) * pn + tol;
  const bool perim2 = o->p_left >= pn / 2 - tol && o->p_left <= (2.0 / 3.0 - delta) * pn + tol;
  const bool volume = o->map.area >= n / 2 - tol && o->map.area <= (1 - delta) * n + tol;
  const bool perim3 = o->p_in <= std::sqrt(n) / delta + tol;
  return perim1 && perim2 && volume && perim3;
}

namespace {

// vertex of q -> vertex of the core, kNone outside
std::vector<VertexId> invert(const std::vector<VertexId>& to_q, int q_vertices) {
  std::vector<VertexId> out(q_vertices, kNone);
  for (VertexId v = 0; v < static_cast<VertexId>(to_q.size()); ++v) out[to_q[v]] = v;
  return out;
}

}  // namespace

CertificateSets certificate_sets(const BijectionResult& b, const CoreResult& core, const RestrictionOutcome& o,
                                 const RestrictionParams& params) {
  if (!o) throw Error(ErrorKind::CemeteryInput, "certificate sets need a restriction");
  if (b.vertex_node.empty()) throw Error(ErrorKind::MissingBackReferences, "no encoding-side data");
  const auto tables = time_change_tables(b, core);
  CertificateSets c;
  c.J_minus = tables.J[o->i_minus];
  c.J_plus = tables.J[o->i_plus];
  const int lambda_star = b.corners.lambda_star;
  const int r = o->r;
  const int n_nodes = static_cast<int>(b.nodes.label.size());

  std::vector<char> corner_vertex(b.quad.map.vertex_count(), 0);
  for (int j = c.J_minus; j < c.J_plus; ++j) corner_vertex[b.quad.map.origin(b.boundary[j])] = 1;
  std::vector<char> tree_in(b.tree_positions.size(), 0);
  for (std::size_t t = 0; t < b.tree_positions.size(); ++t)
    tree_in[t] = corner_vertex[b.node_vertex[b.nodes.first_node[t]]];
  // nodes are in preorder inside each tree, so parents come first
  std::vector<int> path_min(n_nodes), strict_min(n_nodes);
  c.M_low = INT_MAX;
  c.M_high = INT_MIN;
  for (int v = 0; v < n_nodes; ++v) {
    const int hat = b.nodes.label[v] - lambda_star;
    const int par = b.nodes.parent[v];
    strict_min[v] = par < 0 ? INT_MAX : path_min[par];
    path_min[v] = std::min(strict_min[v], hat);
    if (!tree_in[b.nodes.tree[v]]) continue;
    c.S.push_back(v);
    if (path_min[v] >= r + 3) c.S_ge.push_back(v);
    if (hat == r && strict_min[v] >= r + 1) c.S_eq.push_back(v);
    c.M_low = std::min(c.M_low, hat);
    c.M_high = std::max(c.M_high, hat);
  }
  if (c.S.empty()) c.M_low = c.M_high = 0;

  const int a = params.lower_index();
  const int bb = params.upper_index();
  c.h = INT_MAX;
  for (int k = tables.J[a]; k <= tables.J[bb]; ++k)
    c.h = std::min(c.h, b.vertex_label[b.quad.map.origin(b.boundary[k])] - lambda_star);
  return c;
}

namespace {

// Compressed adjacency for repeated breadth-first searches.
class Adjacency {
 public:
  explicit Adjacency(const PlaneMap& m) : offset_(m.vertex_count() + 1, 0) {
    for (HalfEdge h = 0; h < m.half_edge_count(); ++h) ++offset_[m.origin(h) + 1];
    for (std::size_t v = 1; v < offset_.size(); ++v) offset_[v] += offset_[v - 1];
    target_.resize(m.half_edge_count());
    std::vector<int> fill(offset_.begin(), offset_.end() - 1);
    for (HalfEdge h = 0; h < m.half_edge_count(); ++h) target_[fill[m.origin(h)]++] = m.target(h);
    queue_.resize(m.vertex_count());
  }

  void distances(VertexId source, std::vector<int>& dist) {
    dist.assign(offset_.size() - 1, -1);
    dist[source] = 0;
    std::size_t head = 0, tail = 0;
    queue_[tail++] = source;
    while (head < tail) {
      const VertexId v = queue_[head++];
      for (int i = offset_[v]; i < offset_[v + 1]; ++i) {
        const VertexId w = target_[i];
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue_[tail++] = w;
        }
      }
    }
  }

 private:
  std::vector<int> offset_;
  std::vector<VertexId> target_;
  std::vector<VertexId> queue_;
};

}  // namespace

int correspondence_distortion(const PlaneMap& a, const PlaneMap& b,
                              const std::vector<std::pair<VertexId, VertexId>>& relation) {
  std::vector<char> seen_a(a.vertex_count(), 0), seen_b(b.vertex_count(), 0);
  for (auto [x, y] : relation) {
    if (x < 0 || x >= a.vertex_count() || y < 0 || y >= b.vertex_count())
      throw Error(ErrorKind::NotACorrespondence, "vertex id out of range");
    seen_a[x] = seen_b[y] = 1;
  }
  if (std::find(seen_a.begin(), seen_a.end(), 0) != seen_a.end() ||
      std::find(seen_b.begin(), seen_b.end(), 0) != seen_b.end())
    throw Error(ErrorKind::NotACorrespondence, "relation does not cover both vertex sets");

  Adjacency adj_a(a), adj_b(b);
  std::vector<std::vector<std::size_t>> by_x(a.vertex_count());
  for (std::size_t i = 0; i < relation.size(); ++i) by_x[relation[i].first].push_back(i);
  std::vector<int> partners(b.vertex_count(), 0);
  for (auto [x, y] : relation) ++partners[y];
  std::unordered_map<VertexId, std::vector<int>> shared_rows;  // rows of vertices with several partners

  std::vector<int> da, db;
  int worst = 0;
  for (VertexId x = 0; x < a.vertex_count(); ++x) {
    adj_a.distances(x, da);
    for (std::size_t i : by_x[x]) {
      const VertexId y = relation[i].second;
      const std::vector<int>* row = &db;
      if (partners[y] > 1) {
        auto it = shared_rows.find(y);
        if (it == shared_rows.end()) {
          it = shared_rows.emplace(y, std::vector<int>{}).first;
          adj_b.distances(y, it->second);
        }
        row = &it->second;
      } else {
        adj_b.distances(y, db);
      }
      for (auto [x2, y2] : relation) worst = std::max(worst, std::abs(da[x2] - (*row)[y2]));
    }
  }
  return worst;
}

BoundsCheck check_bounds(const BijectionResult& b, const CoreResult& core, const RestrictionOutcome& o,
                         const CertificateSets& certs) {
  if (!o) throw Error(ErrorKind::CemeteryInput, "check_bounds needs a restriction");
  if (!core) throw Error(ErrorKind::CoreUndefined, "the core is the cemetery point");
  BoundsCheck out;
  const auto& q = b.quad.map;
  const int lambda_star = b.corners.lambda_star;
  const int n_nodes = static_cast<int>(b.nodes.label.size());
  std::vector<char> in_s(n_nodes, 0), in_s_ge(n_nodes, 0);
  for (int v : certs.S) in_s[v] = 1;
  for (int v : certs.S_ge) in_s_ge[v] = 1;

  const long s = static_cast<long>(certs.S.size());
  const long area_r = o->map.area;
  const long vr = o->map.map.vertex_count();
  out.volume_sandwich = core->quad.area - s <= area_r && area_r <= vr &&
                        vr <= b.edge_count + b.perimeter / 2 + 1 - static_cast<long>(certs.S_ge.size());
  out.pin_bound = o->p_in <= 2 * (1 + static_cast<long>(certs.S_eq.size())) + 1;
  out.h_identity = certs.h == o->r || certs.h == o->r + 1;
  const VertexId minus_vertex = q.origin(b.boundary[certs.J_minus]);
  for (int root : b.nodes.first_node)
    if (b.node_vertex[root] == minus_vertex) out.minus_is_tree_root = true;

  // restriction vertex -> core vertex -> q vertex -> tree node
  auto node_of_core_vertex = [&](VertexId cv) { return b.vertex_node[core->vertex_to_q[cv]]; };
  out.s_ge_disjoint = true;
  for (VertexId v : o->map_to_q) {
    const int node = node_of_core_vertex(v);
    if (node >= 0 && in_s_ge[node]) out.s_ge_disjoint = false;
  }
  int outside_s = 0;
  for (VertexId v : o->complement_to_q) {
    const int node = node_of_core_vertex(v);
    if (node < 0 || !in_s[node]) ++outside_s;
  }
  out.complement_in_s = outside_s <= 2;

  // leftmost geodesics from c_{T(J(i-))} and c_{T(J(i+))}, merged by label
  const auto T = time_change_T(b);
  const int n_corners = b.corners.size();
  auto chain = [&](int corner) {
    std::vector<VertexId> vs;  // vertex per label, from the start label down to rho
    for (int k = corner; k >= 0 && k < n_corners; k = b.successor[k]) vs.push_back(b.node_vertex[b.corners.node[k]]);
    vs.push_back(b.quad.rho);
    return vs;
  };
  const auto g_minus = chain(T[certs.J_minus]);
  const auto g_plus = chain(T[certs.J_plus]);
  // align from the bottom (rho)
  VertexId merge = b.quad.rho;
  const std::size_t common_len = std::min(g_minus.size(), g_plus.size());
  for (std::size_t d = 1; d <= common_len; ++d) {
    const VertexId x = g_minus[g_minus.size() - d];
    const VertexId y = g_plus[g_plus.size() - d];
    if (x != y) break;
    merge = x;
  }
  out.merge_label = b.vertex_label[merge] - lambda_star;

  const auto q_to_core = invert(core->vertex_to_q, q.vertex_count());
  const auto core_to_r = invert(o->map_to_q, core->quad.map.vertex_count());
  const VertexId merge_core = q_to_core[merge];
  const VertexId merge_r = merge_core == kNone ? kNone : core_to_r[merge_core];
  if (merge_r == kNone) {
    out.gh_bound = false;
    out.distortion = -1;
    return out;
  }
  std::vector<std::pair<VertexId, VertexId>> relation;
  for (VertexId v = 0; v < static_cast<VertexId>(o->map_to_q.size()); ++v) relation.push_back({o->map_to_q[v], v});
  for (VertexId cv : o->complement_to_q) relation.push_back({cv, merge_r});
  out.distortion = correspondence_distortion(core->quad.map, o->map.map, relation);
  out.gh_bound = out.distortion <= 2 * (certs.M_high - certs.M_low + 1);
  return out;
}

}  // namespace qbd
