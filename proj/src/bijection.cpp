#include "qbd/bijection.hpp"

#include <algorithm>
#include <climits>

#include "qbd/error.hpp"

namespace qbd {

ForestNodes forest_nodes(const LabeledTreedBridge& ltb) {
  ForestNodes nodes;
  for (std::size_t k = 0; k < ltb.trees.size(); ++k) {
    const auto& t = ltb.trees[k];
    const int base = static_cast<int>(nodes.tree.size());
    nodes.first_node.push_back(base);
    for (int v = 0; v < t.shape.size(); ++v) {
      nodes.tree.push_back(static_cast<int>(k));
      nodes.parent.push_back(v == 0 ? -1 : base + t.shape.parent[v]);
      nodes.label.push_back(t.labels[v]);
    }
  }
  return nodes;
}

CornerSequence contour_corners(const LabeledTreedBridge& ltb) {
  CornerSequence cs;
  cs.node.reserve(2 * ltb.edge_count + ltb.trees.size());
  int base = 0;
  int min_label = INT_MAX;
  for (const auto& t : ltb.trees) {
    const auto kids = t.shape.children();
    // iterative contour: corner(v), then for each child: visit(child), corner(v)
    std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
    cs.node.push_back(base);
    while (!stack.empty()) {
      auto& [v, next_child] = stack.back();
      if (next_child < kids[v].size()) {
        const int c = kids[v][next_child++];
        stack.push_back({c, 0});
        cs.node.push_back(base + c);
      } else {
        stack.pop_back();
        if (!stack.empty()) cs.node.push_back(base + stack.back().first);
      }
    }
    for (int l : t.labels) min_label = std::min(min_label, l);
    base += t.shape.size();
  }
  const auto nodes_label = forest_nodes(ltb).label;
  cs.label.reserve(cs.node.size());
  for (int v : cs.node) cs.label.push_back(nodes_label[v]);
  cs.lambda_star = min_label - 1;
  return cs;
}

BijectionResult build_quadrangulation(const LabeledTreedBridge& ltb) {
  const auto report = validate(ltb);
  if (!report.ok) throw Error(ErrorKind::PreconditionViolated, "invalid treed bridge: " + report.reasons.front());

  BijectionResult out;
  out.nodes = forest_nodes(ltb);
  out.corners = contour_corners(ltb);
  out.edge_count = ltb.edge_count;
  out.perimeter = ltb.p();
  out.tree_positions = ltb.tree_positions;
  const int n_corners = out.corners.size();
  const int n_nodes = static_cast<int>(out.nodes.tree.size());
  const auto& label = out.corners.label;
  const int lambda_star = out.corners.lambda_star;

  // successors through a backward sweep over two periods
  int max_label = lambda_star;
  for (int l : label) max_label = std::max(max_label, l);
  std::vector<int> latest(max_label - lambda_star + 1, -1);
  out.successor.assign(n_corners, -1);
  for (int k = 2 * n_corners - 1; k >= 0; --k) {
    const int c = k % n_corners;
    if (k < n_corners) {
      const int want = label[c] - 1 - lambda_star;
      out.successor[c] = latest[want] >= 0 ? latest[want] % n_corners : -1;
    }
    latest[label[c] - lambda_star] = k;
  }

  // out(k) = 2k runs from c_k to its successor; in(k) = 2k + 1 is its reverse.
  auto out_he = [](int k) { return static_cast<HalfEdge>(2 * k); };
  auto in_he = [](int k) { return static_cast<HalfEdge>(2 * k + 1); };

  std::vector<std::vector<int>> incoming(n_corners);
  std::vector<int> to_rho;
  for (int k = 0; k < n_corners; ++k) {
    if (out.successor[k] >= 0)
      incoming[out.successor[k]].push_back(k);
    else
      to_rho.push_back(k);
  }
  for (int j = 0; j < n_corners; ++j) {
    auto& list = incoming[j];
    std::sort(list.begin(), list.end(), [&](int a, int b) {
      return (j - a + n_corners) % n_corners < (j - b + n_corners) % n_corners;
    });
  }

  // Clockwise sweep at each node: its corners in contour order, and inside a
  // corner the incoming arcs nearest first followed by the outgoing arc.
  std::vector<std::vector<HalfEdge>> around(n_nodes + 1);
  for (int j = 0; j < n_corners; ++j) {
    auto& list = around[out.corners.node[j]];
    for (int k : incoming[j]) list.push_back(in_he(k));
    list.push_back(out_he(j));
  }
  auto& rho_list = around[n_nodes];
  for (auto it = to_rho.rbegin(); it != to_rho.rend(); ++it) rho_list.push_back(in_he(*it));

  const int half_edges = 2 * n_corners;
  std::vector<HalfEdge> twin(half_edges), next(half_edges);
  for (HalfEdge h = 0; h < half_edges; ++h) twin[h] = h ^ 1;
  for (auto& list : around) {
    // next_at_vertex is counterclockwise, the reverse of the sweep
    const std::size_t d = list.size();
    for (std::size_t a = 0; a < d; ++a) next[list[(a + 1) % d]] = list[a];
  }

  // boundary half-edges from the cycle
  const int p = ltb.p();
  const auto& pos = ltb.tree_positions;
  const int trees = static_cast<int>(pos.size());
  std::vector<int> last_corner(trees);
  {
    int k = 0;
    for (int t = 0; t < trees; ++t) {
      k += 2 * ltb.trees[t].shape.edge_count() + 1;
      last_corner[t] = k - 1;
    }
  }
  out.boundary.assign(p, kNone);
  for (int t = 0; t < trees; ++t) {
    const int i = pos[t];
    const int gap = (t + 1 < trees ? pos[t + 1] : pos[0] + p) - i;
    const int s = last_corner[t];
    out.boundary[i] = out_he(s);
    std::vector<int> chain{(s + 1) % n_corners};
    for (int step = 1; step <= gap - 2; ++step) {
      const int nxt = out.successor[chain.back()];
      if (nxt < 0) throw Error(ErrorKind::BijectionInternal, "successor chain reached rho early");
      chain.push_back(nxt);
    }
    for (int jj = 1; jj < gap; ++jj) out.boundary[(i + jj) % p] = in_he(chain[gap - jj - 1]);
  }

  PlaneMap map = PlaneMap::build(std::move(twin), std::move(next), out.boundary[0]);
  for (int j = 0; j < p; ++j) {
    if (map.next_in_face(out.boundary[j]) != out.boundary[(j + 1) % p])
      throw Error(ErrorKind::BijectionInternal, "boundary does not follow the cycle at " + std::to_string(j));
  }

  out.node_vertex.assign(n_nodes, kNone);
  for (int k = 0; k < n_corners; ++k) out.node_vertex[out.corners.node[k]] = map.origin(out_he(k));
  const VertexId rho = map.origin(in_he(to_rho.front()));
  out.vertex_node.assign(map.vertex_count(), -1);
  out.vertex_label.assign(map.vertex_count(), lambda_star);
  out.first_corner.assign(map.vertex_count(), n_corners);
  for (int v = 0; v < n_nodes; ++v) {
    const VertexId mv = out.node_vertex[v];
    if (mv == rho || out.vertex_node[mv] != -1)
      throw Error(ErrorKind::BijectionInternal, "tree nodes do not map to distinct vertices");
    out.vertex_node[mv] = v;
    out.vertex_label[mv] = out.nodes.label[v];
  }
  for (int k = n_corners - 1; k >= 0; --k) out.first_corner[out.node_vertex[out.corners.node[k]]] = k;

  try {
    out.quad = make_boundary_quad(std::move(map), rho);
  } catch (const Error& e) {
    throw Error(ErrorKind::BijectionInternal, e.what());
  }
  if (out.quad.area != ltb.edge_count || out.quad.perimeter != p)
    throw Error(ErrorKind::BijectionInternal, "area or perimeter mismatch");
  return out;
}

bool verify_label_distance(const BijectionResult& b, const std::vector<int>& labels) {
  const auto& m = b.quad.map;
  if (static_cast<int>(labels.size()) != m.vertex_count()) return false;
  const auto dist = graph_distances(m, b.quad.rho);
  const int base = labels[b.quad.rho];
  for (VertexId v = 0; v < m.vertex_count(); ++v)
    if (dist[v] != labels[v] - base) return false;
  return true;
}

bool verify_label_distance(const BijectionResult& b) { return verify_label_distance(b, b.vertex_label); }

std::vector<int> time_change_T(const BijectionResult& b) {
  std::vector<int> t(b.perimeter + 1);
  for (int j = 0; j < b.perimeter; ++j) t[j] = b.first_corner[b.quad.map.origin(b.boundary[j])];
  t[b.perimeter] = b.corners.size();
  return t;
}

LabelProcesses label_processes(const LabeledTreedBridge& ltb, int grid_points) {
  if (grid_points < 2) throw Error(ErrorKind::PreconditionViolated, "grid needs at least 2 points");
  const auto cs = contour_corners(ltb);
  const int p = ltb.p();
  const int n = cs.size();
  LabelProcesses lp;
  for (int g = 0; g < grid_points; ++g) {
    const int j = static_cast<int>(static_cast<long long>(p) * g / (grid_points - 1));
    const int k = static_cast<int>(static_cast<long long>(n - 1) * g / (grid_points - 1));
    lp.B.push_back(ltb.bridge.labels[j]);
    lp.L.push_back(cs.label[k]);
  }
  return lp;
}

}  // namespace qbd
