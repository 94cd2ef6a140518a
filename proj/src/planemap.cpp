#include "qbd/planemap.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>

#include "qbd/error.hpp"

namespace qbd {

namespace {

void append_varint(std::string& out, std::uint64_t value) {
  while (value >= 0x80) {
    out.push_back(static_cast<char>((value & 0x7f) | 0x80));
    value >>= 7;
  }
  out.push_back(static_cast<char>(value));
}

bool is_permutation_of_range(std::span<const HalfEdge> perm) {
  std::vector<char> seen(perm.size(), 0);
  for (HalfEdge x : perm) {
    if (x < 0 || static_cast<std::size_t>(x) >= perm.size() || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

}  // namespace

PlaneMap PlaneMap::build(std::vector<HalfEdge> twin, std::vector<HalfEdge> next_at_vertex,
                         HalfEdge root, std::optional<VertexId> point) {
  if (twin.size() != next_at_vertex.size())
    throw Error(ErrorKind::MalformedPermutation, "twin and next_at_vertex differ in length");
  if (twin.size() % 2 != 0)
    throw Error(ErrorKind::MalformedPermutation, "odd number of half-edges");
  if (twin.empty()) {
    if (point && *point != 0) throw Error(ErrorKind::MalformedPermutation, "point out of range");
    PlaneMap m = vertex_map();
    m.point_ = point;
    return m;
  }
  if (!is_permutation_of_range(twin) || !is_permutation_of_range(next_at_vertex))
    throw Error(ErrorKind::MalformedPermutation, "not a bijection on half-edge ids");
  for (std::size_t h = 0; h < twin.size(); ++h) {
    if (twin[h] == static_cast<HalfEdge>(h))
      throw Error(ErrorKind::MalformedPermutation, "twin has a fixed point at " + std::to_string(h));
    if (twin[twin[h]] != static_cast<HalfEdge>(h))
      throw Error(ErrorKind::MalformedPermutation, "twin is not an involution");
  }
  if (root < 0 || static_cast<std::size_t>(root) >= twin.size())
    throw Error(ErrorKind::MalformedPermutation, "root out of range");

  PlaneMap m;
  m.twin_ = std::move(twin);
  m.next_ = std::move(next_at_vertex);
  m.root_ = root;
  m.index_orbits();

  // connectivity of the group generated by twin and next_at_vertex
  std::vector<char> seen(m.twin_.size(), 0);
  std::vector<HalfEdge> stack{root};
  seen[root] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    HalfEdge h = stack.back();
    stack.pop_back();
    for (HalfEdge g : {m.twin_[h], m.next_[h]}) {
      if (!seen[g]) {
        seen[g] = 1;
        ++reached;
        stack.push_back(g);
      }
    }
  }
  if (reached != m.twin_.size()) throw Error(ErrorKind::Disconnected, "map is not connected");
  if (m.euler_characteristic() != 2)
    throw Error(ErrorKind::NonPlanar,
                "Euler characteristic " + std::to_string(m.euler_characteristic()));
  if (point) {
    if (*point < 0 || *point >= m.vertex_count())
      throw Error(ErrorKind::MalformedPermutation, "point out of range");
    m.point_ = point;
  }
  return m;
}

PlaneMap PlaneMap::vertex_map() {
  PlaneMap m;
  m.vertex_rep_ = {kNone};
  m.vertex_degree_ = {0};
  m.face_rep_ = {kNone};
  m.face_degree_ = {0};
  return m;
}

PlaneMap PlaneMap::edge_map() { return build({1, 0}, {0, 1}, 0); }

void PlaneMap::index_orbits() {
  const int n = half_edge_count();
  prev_.assign(n, kNone);
  for (HalfEdge h = 0; h < n; ++h) prev_[next_[h]] = h;

  origin_.assign(n, kNone);
  vertex_rep_.clear();
  vertex_degree_.clear();
  for (HalfEdge h = 0; h < n; ++h) {
    if (origin_[h] != kNone) continue;
    const VertexId v = static_cast<VertexId>(vertex_rep_.size());
    vertex_rep_.push_back(h);
    int deg = 0;
    HalfEdge g = h;
    do {
      origin_[g] = v;
      ++deg;
      g = next_[g];
    } while (g != h);
    vertex_degree_.push_back(deg);
  }

  face_.assign(n, kNone);
  face_rep_.clear();
  face_degree_.clear();
  for (HalfEdge h = 0; h < n; ++h) {
    if (face_[h] != kNone) continue;
    const FaceId f = static_cast<FaceId>(face_rep_.size());
    face_rep_.push_back(h);
    int deg = 0;
    HalfEdge g = h;
    do {
      face_[g] = f;
      ++deg;
      g = next_in_face(g);
    } while (g != h);
    face_degree_.push_back(deg);
  }
}

PlaneMap PlaneMap::with_root(HalfEdge root) const {
  if (root < 0 || root >= half_edge_count())
    throw Error(ErrorKind::MalformedPermutation, "root out of range");
  PlaneMap m = *this;
  m.root_ = root;
  return m;
}

PlaneMap PlaneMap::with_point(std::optional<VertexId> point) const {
  if (point && (*point < 0 || *point >= vertex_count()))
    throw Error(ErrorKind::MalformedPermutation, "point out of range");
  PlaneMap m = *this;
  m.point_ = point;
  return m;
}

std::vector<VertexId> PlaneMap::neighbours(VertexId v) const {
  std::vector<VertexId> out;
  const HalfEdge start = vertex_rep_[v];
  if (start == kNone) return out;
  HalfEdge h = start;
  do {
    out.push_back(target(h));
    h = next_[h];
  } while (h != start);
  return out;
}

PlaneMap mirror(const PlaneMap& m) {
  if (m.half_edge_count() == 0) return m;
  std::vector<HalfEdge> twin(m.twins().begin(), m.twins().end());
  std::vector<HalfEdge> next(m.half_edge_count());
  for (HalfEdge h = 0; h < m.half_edge_count(); ++h) next[h] = m.prev_at_vertex(h);
  const HalfEdge root = m.twin(m.prev_in_face(m.root()));
  PlaneMap out = PlaneMap::build(std::move(twin), std::move(next), root);
  // vertex ids follow from the unchanged vertex orbits, so the point carries over
  return out.with_point(m.point());
}

std::vector<int> graph_distances(const PlaneMap& m, VertexId source) {
  std::vector<int> dist(m.vertex_count(), -1);
  dist[source] = 0;
  std::vector<VertexId> queue{source};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId v = queue[head];
    const HalfEdge start = m.vertex_half_edge(v);
    if (start == kNone) continue;
    HalfEdge h = start;
    do {
      const VertexId w = m.target(h);
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
      h = m.next_at_vertex(h);
    } while (h != start);
  }
  return dist;
}

PointedBoundaryQuad make_boundary_quad(PlaneMap m, VertexId rho) {
  PointedBoundaryQuad q;
  if (m.half_edge_count() == 0)
    throw Error(ErrorKind::MalformedQuadrangulation, "a boundary needs at least one edge");
  q.external_face = m.face(m.root());
  for (FaceId f = 0; f < m.face_count(); ++f) {
    if (f != q.external_face && m.face_degree(f) != 4)
      throw Error(ErrorKind::MalformedQuadrangulation,
                  "inner face of degree " + std::to_string(m.face_degree(f)));
  }
  q.perimeter = m.face_degree(q.external_face);
  if (q.perimeter % 2 != 0)
    throw Error(ErrorKind::MalformedQuadrangulation, "odd perimeter");
  q.area = m.face_count() - 1;
  if (rho != kNone && (rho < 0 || rho >= m.vertex_count()))
    throw Error(ErrorKind::MalformedQuadrangulation, "rho out of range");
  q.rho = rho;
  q.map = rho == kNone ? m.with_point(std::nullopt) : m.with_point(rho);
  return q;
}

BoundaryWalk boundary_walk(const PointedBoundaryQuad& q) {
  BoundaryWalk walk;
  const PlaneMap& m = q.map;
  walk.corners.reserve(q.perimeter);
  std::vector<char> seen(m.vertex_count(), 0);
  HalfEdge h = m.root();
  do {
    const VertexId v = m.origin(h);
    if (seen[v]) walk.simple = false;
    seen[v] = 1;
    walk.corners.push_back({v, h});
    h = m.next_in_face(h);
  } while (h != m.root());
  return walk;
}

std::string canonical_code(const PlaneMap& m, std::span<const VertexId> marks) {
  std::string code;
  const int n = m.half_edge_count();
  append_varint(code, static_cast<std::uint64_t>(n));
  std::vector<int> rank(n, -1);
  std::vector<HalfEdge> order;
  if (n > 0) {
    order.reserve(n);
    rank[m.root()] = 0;
    order.push_back(m.root());
    for (std::size_t head = 0; head < order.size(); ++head) {
      const HalfEdge h = order[head];
      for (HalfEdge g : {m.next_at_vertex(h), m.twin(h)}) {
        if (rank[g] < 0) {
          rank[g] = static_cast<int>(order.size());
          order.push_back(g);
        }
      }
    }
    for (HalfEdge h : order) {
      append_varint(code, static_cast<std::uint64_t>(rank[m.next_at_vertex(h)]));
      append_varint(code, static_cast<std::uint64_t>(rank[m.twin(h)]));
    }
  }
  auto vertex_rank = [&](VertexId v) -> std::uint64_t {
    if (v == kNone) return 0;
    if (n == 0) return 1;
    int best = n;
    const HalfEdge start = m.vertex_half_edge(v);
    HalfEdge h = start;
    do {
      best = std::min(best, rank[h]);
      h = m.next_at_vertex(h);
    } while (h != start);
    return static_cast<std::uint64_t>(best) + 1;
  };
  const std::size_t mark_count = marks.size() + (m.point() ? 1 : 0);
  append_varint(code, mark_count);
  if (m.point()) append_varint(code, vertex_rank(*m.point()));
  for (VertexId v : marks) append_varint(code, vertex_rank(v));
  return code;
}

std::string rooted_code(const PlaneMap& m) { return canonical_code(m.with_point(std::nullopt)); }

PlaneMap map_from_drawing(std::span<const std::pair<double, double>> points,
                          std::span<const std::pair<int, int>> edges, HalfEdge root) {
  const int n = static_cast<int>(edges.size()) * 2;
  std::vector<HalfEdge> twin(n), next(n);
  std::vector<std::vector<std::pair<double, HalfEdge>>> around(points.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto [a, b] = edges[k];
    const auto& pa = points[a];
    const auto& pb = points[b];
    const HalfEdge h = static_cast<HalfEdge>(2 * k);
    twin[h] = h + 1;
    twin[h + 1] = h;
    around[a].push_back({std::atan2(pb.second - pa.second, pb.first - pa.first), h});
    around[b].push_back({std::atan2(pa.second - pb.second, pa.first - pb.first), h + 1});
  }
  for (auto& list : around) {
    std::sort(list.begin(), list.end());
    for (std::size_t i = 0; i < list.size(); ++i) next[list[i].second] = list[(i + 1) % list.size()].second;
  }
  return PlaneMap::build(std::move(twin), std::move(next), root);
}

void write_planemap(std::ostream& out, const PlaneMap& m) {
  out << "PLANEMAP v1 " << m.half_edge_count() << ' ' << m.root();
  if (m.point()) out << ' ' << *m.point();
  out << '\n';
  for (HalfEdge h = 0; h < m.half_edge_count(); ++h) out << "twin " << m.twin(h) << '\n';
  for (HalfEdge h = 0; h < m.half_edge_count(); ++h) out << "nextv " << m.next_at_vertex(h) << '\n';
}

PlaneMap read_planemap(std::istream& in) {
  std::string line;
  while (std::getline(in, line) && line.empty()) {
  }
  std::istringstream header(line);
  std::string magic, version;
  int count = 0;
  HalfEdge root = kNone;
  header >> magic >> version >> count >> root;
  if (!header || magic != "PLANEMAP" || version != "v1" || count < 0)
    throw Error(ErrorKind::ParseError, "bad PLANEMAP header: " + line);
  std::optional<VertexId> point;
  VertexId p = 0;
  if (header >> p) point = p;

  auto read_block = [&](const char* tag) {
    std::vector<HalfEdge> values(count);
    for (int i = 0; i < count; ++i) {
      if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "truncated PLANEMAP");
      std::istringstream row(line);
      std::string key;
      row >> key >> values[i];
      if (!row || key != tag) throw Error(ErrorKind::ParseError, "expected '" + std::string(tag) + "': " + line);
    }
    return values;
  };
  auto twin = read_block("twin");
  auto next = read_block("nextv");
  return PlaneMap::build(std::move(twin), std::move(next), root, point);
}

std::string to_text(const PlaneMap& m) {
  std::ostringstream out;
  write_planemap(out, m);
  return out.str();
}

PlaneMap from_text(const std::string& text) {
  std::istringstream in(text);
  return read_planemap(in);
}

}  // namespace qbd
