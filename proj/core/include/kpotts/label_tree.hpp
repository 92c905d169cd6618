#pragma once

#include <vector>

#include "kpotts/types.hpp"

namespace kpotts {

/// Balanced binary tree over label ranges [lo, hi) of L = {0..k-1}: the root
/// is L, a node with two or more labels has children holding the first
/// ceil(|A|/2) labels and the rest, and the leaves are singletons.
class LabelTree {
 public:
  struct Node {
    Label lo = 0;
    Label hi = 0;
    int depth = 0;
    int parent = -1;
    int left = -1;
    int right = -1;
    int inorder = 0;

    bool is_leaf() const { return hi - lo == 1; }
    Label size() const { return hi - lo; }
    bool contains(Label a) const { return lo <= a && a < hi; }
  };

  LabelTree() = default;
  explicit LabelTree(Label k);

  int root() const { return 0; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int id) const { return nodes_.at(id); }
  int leaf_of(Label a) const { return leaf_.at(a); }

  /// Number of depths, ceil(1 + log2 k) for k >= 2.
  int levels() const { return levels_; }

  int lca(int u, int v) const;

  /// True when `v` lies in the subtree of the left child of `u`.
  bool in_left_subtree(int u, int v) const;

 private:
  int build(Label lo, Label hi, int depth, int parent);

  std::vector<Node> nodes_;
  std::vector<int> leaf_;
  int levels_ = 0;
};

}  // namespace kpotts
