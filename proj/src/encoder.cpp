#include "qbd/encoder.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>

#include "qbd/error.hpp"

namespace qbd {

std::vector<std::vector<int>> PlaneTree::children() const {
  std::vector<std::vector<int>> out(parent.size());
  for (int v = 1; v < size(); ++v) out[parent[v]].push_back(v);
  return out;
}

std::vector<int> downsteps(const DiscreteBridge& bridge) {
  std::vector<int> out;
  for (int i = 0; i < bridge.p(); ++i)
    if (bridge.labels[i + 1] == bridge.labels[i] - 1) out.push_back(i);
  return out;
}

DiscreteBridge sample_bridge(int p, Rng& rng) {
  if (p < 2 || p % 2 != 0)
    throw Error(ErrorKind::InvalidPerimeter, "perimeter must be even and >= 2, got " + std::to_string(p));
  std::vector<int> steps(p, 1);
  std::fill(steps.begin() + p / 2, steps.end(), -1);
  std::shuffle(steps.begin(), steps.end(), rng.engine());
  DiscreteBridge b;
  b.labels.resize(p + 1);
  b.labels[0] = 0;
  for (int i = 0; i < p; ++i) b.labels[i + 1] = b.labels[i] + steps[i];
  return b;
}

mpz_class count_plane_forests(int f, int m) {
  if (f < 1 || m < 0) return 0;
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(2 * m + f), static_cast<unsigned long>(m));
  mpz_class out = binom * f;
  out /= (2 * m + f);
  return out;
}

std::vector<PlaneTree> forest_from_word(std::span<const int> steps, int f) {
  std::vector<PlaneTree> forest;
  forest.reserve(f);
  PlaneTree current;
  std::vector<int> stack{0};
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (steps[k] > 0) {
      current.parent.push_back(stack.back());
      stack.push_back(current.size() - 1);
    } else if (stack.size() > 1) {
      stack.pop_back();
    } else {
      forest.push_back(std::move(current));
      current = PlaneTree{};
      stack.assign(1, 0);
    }
  }
  if (static_cast<int>(forest.size()) != f)
    throw Error(ErrorKind::PreconditionViolated, "step word does not encode a forest with f trees");
  return forest;
}

std::vector<PlaneTree> sample_plane_forest(int f, int m, Rng& rng) {
  if (f < 1 || m < 0) throw Error(ErrorKind::PreconditionViolated, "need f >= 1 and m >= 0");
  const int n = 2 * m + f;
  std::vector<int> word(n, -1);
  std::fill(word.begin(), word.begin() + m, 1);
  std::shuffle(word.begin(), word.end(), rng.engine());

  // Rotation starting after position t is admissible iff every partial sum
  // P_s - P_t (t < s < t + n) stays above -f, with P extended by P_{s+n} = P_s - f.
  std::vector<long> prefix(2 * n + 1, 0);
  for (int s = 0; s < 2 * n; ++s) prefix[s + 1] = prefix[s] + word[s % n];
  std::vector<int> good;
  std::deque<int> window;  // indices with increasing prefix values
  // sliding minimum of prefix over (t, t + n)
  int next = 1;
  for (int t = 0; t < n; ++t) {
    while (next < t + n) {
      while (!window.empty() && prefix[window.back()] >= prefix[next]) window.pop_back();
      window.push_back(next);
      ++next;
    }
    while (!window.empty() && window.front() <= t) window.pop_front();
    const long min_inside = window.empty() ? prefix[t] : prefix[window.front()];
    if (window.empty() || min_inside > prefix[t] - f) good.push_back(t);
  }
  if (static_cast<int>(good.size()) != f)
    throw Error(ErrorKind::PreconditionViolated, "cycle lemma produced an unexpected rotation count");
  const int t = good[static_cast<std::size_t>(rng.uniform_int(0, f - 1))];
  std::rotate(word.begin(), word.begin() + t, word.end());
  return forest_from_word(word, f);
}

std::vector<LabeledTree> sample_labels(const std::vector<PlaneTree>& forest,
                                       std::span<const int> root_labels, Rng& rng) {
  if (root_labels.size() != forest.size())
    throw Error(ErrorKind::PreconditionViolated, "one root label per tree is required");
  std::vector<LabeledTree> out;
  out.reserve(forest.size());
  for (std::size_t k = 0; k < forest.size(); ++k) {
    LabeledTree t;
    t.shape = forest[k];
    t.labels.assign(t.shape.size(), root_labels[k]);
    for (int v = 1; v < t.shape.size(); ++v)
      t.labels[v] = t.labels[t.shape.parent[v]] + static_cast<int>(rng.uniform_int(-1, 1));
    out.push_back(std::move(t));
  }
  return out;
}

LabeledTreedBridge sample_treed_bridge(int p, int m, Rng& rng) {
  LabeledTreedBridge ltb;
  ltb.bridge = sample_bridge(p, rng);
  ltb.tree_positions = downsteps(ltb.bridge);
  auto forest = sample_plane_forest(p / 2, m, rng);
  std::vector<int> roots;
  for (int i : ltb.tree_positions) roots.push_back(ltb.bridge.labels[i]);
  ltb.trees = sample_labels(forest, roots, rng);
  ltb.edge_count = m;
  return ltb;
}

ValidationReport validate(const LabeledTreedBridge& ltb) {
  ValidationReport report;
  auto fail = [&](std::string why) {
    report.ok = false;
    report.reasons.push_back(std::move(why));
  };
  const auto& labels = ltb.bridge.labels;
  const int p = ltb.p();
  if (p < 2 || p % 2 != 0) fail("bridge length is not a positive even integer");
  if (labels.empty() || labels.front() != 0 || labels.back() != 0) fail("bridge does not start and end at 0");
  int ups = 0;
  for (int i = 0; i + 1 < static_cast<int>(labels.size()); ++i) {
    const int d = labels[i + 1] - labels[i];
    if (d != 1 && d != -1) fail("bridge step " + std::to_string(i) + " is not +-1");
    if (d == 1) ++ups;
  }
  if (p >= 0 && ups * 2 != p) fail("bridge does not have p/2 upsteps");
  if (ltb.tree_positions != downsteps(ltb.bridge)) fail("trees are not attached exactly at the downsteps");
  if (ltb.trees.size() != ltb.tree_positions.size()) fail("tree count differs from downstep count");
  int edges = 0;
  for (std::size_t k = 0; k < ltb.trees.size(); ++k) {
    const auto& t = ltb.trees[k];
    const std::string tag = "tree " + std::to_string(k) + ": ";
    if (t.shape.parent.empty() || t.shape.parent[0] != -1) {
      fail(tag + "malformed shape");
      continue;
    }
    if (static_cast<int>(t.labels.size()) != t.shape.size()) {
      fail(tag + "label count differs from node count");
      continue;
    }
    for (int v = 1; v < t.shape.size(); ++v) {
      const int par = t.shape.parent[v];
      if (par < 0 || par >= v) {
        fail(tag + "parent array is not in preorder");
        break;
      }
      const int d = t.labels[v] - t.labels[par];
      if (d < -1 || d > 1) fail(tag + "label jump of " + std::to_string(d) + " across an edge");
    }
    if (k < ltb.tree_positions.size()) {
      const int pos = ltb.tree_positions[k];
      if (pos >= 0 && pos < static_cast<int>(labels.size()) && t.root_label() != labels[pos])
        fail(tag + "root label differs from the bridge label");
    }
    edges += t.shape.edge_count();
  }
  if (edges != ltb.edge_count) fail("edge count mismatch");
  return report;
}

std::string to_parens(const PlaneTree& tree) {
  if (tree.size() == 1) return ".";
  std::string out;
  std::vector<int> stack{0};
  for (int v = 1; v < tree.size(); ++v) {
    while (stack.back() != tree.parent[v]) {
      stack.pop_back();
      out.push_back(')');
    }
    out.push_back('(');
    stack.push_back(v);
  }
  out.append(stack.size() - 1, ')');
  return out;
}

PlaneTree tree_from_parens(const std::string& text) {
  PlaneTree tree;
  if (text == ".") return tree;
  std::vector<int> stack{0};
  for (char c : text) {
    if (c == '(') {
      tree.parent.push_back(stack.back());
      stack.push_back(tree.size() - 1);
    } else if (c == ')' && stack.size() > 1) {
      stack.pop_back();
    } else {
      throw Error(ErrorKind::ParseError, "bad tree shape: " + text);
    }
  }
  if (stack.size() != 1) throw Error(ErrorKind::ParseError, "unbalanced tree shape: " + text);
  return tree;
}

void write_ltb(std::ostream& out, const LabeledTreedBridge& ltb) {
  out << "LTB v1 " << ltb.p() << ' ' << ltb.edge_count << '\n';
  out << "bridge";
  for (int l : ltb.bridge.labels) out << ' ' << l;
  out << '\n';
  for (std::size_t k = 0; k < ltb.trees.size(); ++k) {
    out << "tree " << ltb.tree_positions[k] << ' ' << to_parens(ltb.trees[k].shape);
    for (int l : ltb.trees[k].labels) out << ' ' << l;
    out << '\n';
  }
}

LabeledTreedBridge read_ltb(std::istream& in) {
  std::string line;
  while (std::getline(in, line) && line.empty()) {
  }
  std::istringstream header(line);
  std::string magic, version;
  int p = -1;
  LabeledTreedBridge ltb;
  header >> magic >> version >> p >> ltb.edge_count;
  if (!header || magic != "LTB" || version != "v1" || p < 0)
    throw Error(ErrorKind::ParseError, "bad LTB header: " + line);
  if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "missing bridge line");
  std::istringstream bridge(line);
  std::string key;
  bridge >> key;
  if (key != "bridge") throw Error(ErrorKind::ParseError, "expected bridge line: " + line);
  ltb.bridge.labels.resize(p + 1);
  for (int& l : ltb.bridge.labels)
    if (!(bridge >> l)) throw Error(ErrorKind::ParseError, "short bridge line");
  for (int k = 0; k < p / 2; ++k) {
    if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "missing tree line");
    std::istringstream row(line);
    int pos = 0;
    std::string shape;
    row >> key >> pos >> shape;
    if (!row || key != "tree") throw Error(ErrorKind::ParseError, "expected tree line: " + line);
    LabeledTree t;
    t.shape = tree_from_parens(shape);
    t.labels.resize(t.shape.size());
    for (int& l : t.labels)
      if (!(row >> l)) throw Error(ErrorKind::ParseError, "short label list: " + line);
    ltb.tree_positions.push_back(pos);
    ltb.trees.push_back(std::move(t));
  }
  return ltb;
}

std::string ltb_to_text(const LabeledTreedBridge& ltb) {
  std::ostringstream out;
  write_ltb(out, ltb);
  return out.str();
}

LabeledTreedBridge ltb_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_ltb(in);
}

}  // namespace qbd
