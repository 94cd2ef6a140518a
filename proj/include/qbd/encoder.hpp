#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qbd/rng.hpp"

namespace qbd {

/// Labels lambda(rho_0..rho_p) of a +-1 path from 0 to 0.
struct DiscreteBridge {
  std::vector<int> labels;
  int p() const { return static_cast<int>(labels.size()) - 1; }
};

/// Plane tree stored in preorder: parent[0] == -1 and the children of a node
/// appear in planar order as increasing indices.
struct PlaneTree {
  std::vector<int> parent{-1};
  int size() const { return static_cast<int>(parent.size()); }
  int edge_count() const { return size() - 1; }
  std::vector<std::vector<int>> children() const;
};

struct LabeledTree {
  PlaneTree shape;
  std::vector<int> labels{0};  // one per node, preorder
  int root_label() const { return labels[0]; }
};

/// Bridge plus one labeled tree per downstep. `tree_positions[k]` is the
/// downstep index i (lambda(rho_{i+1}) = lambda(rho_i) - 1) carrying trees[k];
/// positions are increasing.
struct LabeledTreedBridge {
  DiscreteBridge bridge;
  std::vector<int> tree_positions;
  std::vector<LabeledTree> trees;
  int edge_count = 0;
  int p() const { return bridge.p(); }
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> reasons;
};

/// Indices i in [0, p) with lambda(rho_{i+1}) = lambda(rho_i) - 1.
std::vector<int> downsteps(const DiscreteBridge& bridge);

/// Uniform bridge of length p. Throws InvalidPerimeter unless p is even and >= 2.
DiscreteBridge sample_bridge(int p, Rng& rng);

/// Number of plane forests with f trees and m edges: f/(2m+f) * C(2m+f, m).
mpz_class count_plane_forests(int f, int m);

/// Decodes a step word (+1 = up, -1 = down) whose partial sums stay above -f
/// until the final step, which reaches -f. An up step adds a child to the
/// current node; a down step returns to the parent or closes the current tree.
std::vector<PlaneTree> forest_from_word(std::span<const int> steps, int f);

/// Uniform plane forest with f trees and m edges.
std::vector<PlaneTree> sample_plane_forest(int f, int m, Rng& rng);

/// i.i.d. uniform increments in {-1, 0, 1} along every edge.
std::vector<LabeledTree> sample_labels(const std::vector<PlaneTree>& forest,
                                       std::span<const int> root_labels, Rng& rng);

/// Uniform labeled treed bridge with p/2 trees and m edges.
LabeledTreedBridge sample_treed_bridge(int p, int m, Rng& rng);

ValidationReport validate(const LabeledTreedBridge& ltb);

std::string to_parens(const PlaneTree& tree);
PlaneTree tree_from_parens(const std::string& text);

void write_ltb(std::ostream& out, const LabeledTreedBridge& ltb);
LabeledTreedBridge read_ltb(std::istream& in);
std::string ltb_to_text(const LabeledTreedBridge& ltb);
LabeledTreedBridge ltb_from_text(const std::string& text);

}  // namespace qbd
