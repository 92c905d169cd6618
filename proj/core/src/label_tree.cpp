#include "kpotts/label_tree.hpp"

#include <algorithm>
#include <functional>

namespace kpotts {

LabelTree::LabelTree(Label k) : leaf_(k, -1) {
  if (k < 1) throw DegenerateInstance("label tree needs at least one label");
  build(0, k, 0, -1);
  int next = 0;
  std::function<void(int)> number = [&](int id) {
    if (id < 0) return;
    number(nodes_[id].left);
    nodes_[id].inorder = next++;
    number(nodes_[id].right);
  };
  number(0);
  for (const Node& n : nodes_) levels_ = std::max(levels_, n.depth + 1);
}

int LabelTree::build(Label lo, Label hi, int depth, int parent) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({lo, hi, depth, parent, -1, -1, 0});
  if (hi - lo == 1) {
    leaf_[lo] = id;
    return id;
  }
  const Label mid = lo + (hi - lo + 1) / 2;
  const int l = build(lo, mid, depth + 1, id);
  const int r = build(mid, hi, depth + 1, id);
  nodes_[id].left = l;
  nodes_[id].right = r;
  return id;
}

int LabelTree::lca(int u, int v) const {
  while (nodes_.at(u).depth > nodes_.at(v).depth) u = nodes_[u].parent;
  while (nodes_.at(v).depth > nodes_.at(u).depth) v = nodes_[v].parent;
  while (u != v) {
    u = nodes_[u].parent;
    v = nodes_[v].parent;
  }
  return u;
}

bool LabelTree::in_left_subtree(int u, int v) const {
  const int l = nodes_.at(u).left;
  if (l < 0) return false;
  const Node& a = nodes_[l];
  const Node& b = nodes_.at(v);
  return a.lo <= b.lo && b.hi <= a.hi;
}

}  // namespace kpotts
