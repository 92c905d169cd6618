#include "kpotts/tree_metric.hpp"

#include <algorithm>
#include <string>

namespace kpotts {

WeightedLabelTree::WeightedLabelTree(int size, std::vector<TreeEdge> edges)
    : size_(size), edges_(std::move(edges)), adjacency_(size) {
  if (size < 1) throw StructuralError("tree needs at least one node");
  if (edges_.size() != static_cast<std::size_t>(size - 1)) {
    throw StructuralError("a tree on " + std::to_string(size) + " nodes needs " +
                          std::to_string(size - 1) + " edges");
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const TreeEdge& te = edges_[e];
    if (te.a < 0 || te.b < 0 || te.a >= size || te.b >= size || te.a == te.b) {
      throw StructuralError("tree edge with invalid endpoints");
    }
    if (te.length <= 0) throw StructuralError("tree edge lengths must be positive");
    adjacency_[te.a].push_back({te.b, te.length, static_cast<int>(e)});
    adjacency_[te.b].push_back({te.a, te.length, static_cast<int>(e)});
  }

  dist_.assign(static_cast<std::size_t>(size) * size, -1);
  std::vector<int> stack;
  for (int root = 0; root < size; ++root) {
    Cost* row = dist_.data() + static_cast<std::size_t>(root) * size;
    row[root] = 0;
    stack.assign(1, root);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const Neighbor& nb : adjacency_[v]) {
        if (row[nb.node] < 0) {
          row[nb.node] = row[v] + nb.length;
          stack.push_back(nb.node);
        }
      }
    }
    if (std::find(row, row + size, Cost{-1}) != row + size) {
      throw StructuralError("tree edges do not connect all nodes");
    }
  }
}

WeightedLabelTree WeightedLabelTree::star(int leaves, Cost length) {
  std::vector<TreeEdge> edges;
  for (int a = 0; a < leaves; ++a) edges.push_back({a, leaves, length});
  return WeightedLabelTree(leaves + 1, std::move(edges));
}

Cost WeightedLabelTree::distance(int a, int b) const {
  if (a < 0 || b < 0 || a >= size_ || b >= size_) {
    throw StructuralError("distance query for a node outside the tree");
  }
  return dist_[static_cast<std::size_t>(a) * size_ + b];
}

int WeightedLabelTree::find_edge(int a, int b) const {
  for (const Neighbor& nb : adjacency_.at(a)) {
    if (nb.node == b) return nb.edge;
  }
  return -1;
}

std::vector<int> WeightedLabelTree::component(int a, int b) const {
  if (find_edge(a, b) < 0) throw StructuralError("component() needs an existing edge");
  // c lies on a's side iff the path from c to b passes through a.
  std::vector<int> out;
  for (int c = 0; c < size_; ++c) {
    if (distance(c, b) > distance(c, a)) out.push_back(c);
  }
  return out;
}

std::optional<ConvexityViolation> find_convexity_violation(const WeightedLabelTree& tree,
                                                           std::span<const Cost> g) {
  if (g.size() != static_cast<std::size_t>(tree.size())) {
    throw StructuralError("unary row size does not match tree size");
  }
  __extension__ typedef __int128 Wide;
  for (int b = 0; b < tree.size(); ++b) {
    const auto nbs = tree.neighbors(b);
    for (std::size_t p = 0; p < nbs.size(); ++p) {
      for (std::size_t q = p + 1; q < nbs.size(); ++q) {
        const int a = nbs[p].node;
        const int c = nbs[q].node;
        const Cost dab = nbs[p].length;
        const Cost dbc = nbs[q].length;
        if (Wide(dab + dbc) * g[b] > Wide(dbc) * g[a] + Wide(dab) * g[c]) {
          return ConvexityViolation{a, b, c};
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<int> project_to_edge(const WeightedLabelTree& tree, std::span<const int> x, int a,
                                 int b) {
  if (tree.find_edge(a, b) < 0) throw StructuralError("projection needs an existing edge");
  std::vector<int> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = tree.distance(x[i], a) < tree.distance(x[i], b) ? a : b;
  }
  return out;
}

UnarySelector clamp_to(std::vector<Rational> reference) {
  return [ref = std::move(reference)](NodeId i, const Rational& lo, const Rational& hi) {
    return clamp(ref.at(i), lo, hi);
  };
}

std::pair<Rational, Rational> insertion_interval(const WeightedLabelTree& tree,
                                                 std::span<const Cost> g, int pivot,
                                                 std::span<const int> near,
                                                 std::span<const int> far) {
  std::optional<Rational> lo_min;
  for (const int c : near) {
    const Rational slope(g[c] - g[pivot], tree.distance(pivot, c));
    if (!lo_min || slope < *lo_min) lo_min = slope;
  }
  std::optional<Rational> hi;
  for (const int c : far) {
    const Rational slope(g[c] - g[pivot], tree.distance(pivot, c));
    if (!hi || slope < *hi) hi = slope;
  }
  return {-*lo_min, *hi};
}

InsertionResult insert_edge(const WeightedLabelTree& tree, std::span<const Cost> unary,
                            NodeId node_count, int pivot, std::span<const int> near,
                            std::span<const int> far, const UnarySelector& selector) {
  const int m = tree.size();
  if (unary.size() != static_cast<std::size_t>(node_count) * m) {
    throw StructuralError("unary table size does not match node count x tree size");
  }
  if (pivot < 0 || pivot >= m || tree.degree(pivot) < 2) {
    throw StructuralError("insertion pivot needs at least two neighbours");
  }
  if (near.empty() || far.empty()) throw StructuralError("neighbour partition has an empty part");
  std::vector<int> all(near.begin(), near.end());
  all.insert(all.end(), far.begin(), far.end());
  std::sort(all.begin(), all.end());
  std::vector<int> nbs;
  for (const auto& nb : tree.neighbors(pivot)) nbs.push_back(nb.node);
  std::sort(nbs.begin(), nbs.end());
  if (all != nbs) throw StructuralError("near/far must partition the pivot's neighbours");

  InsertionResult out;
  EdgeInsertion& rec = out.record;
  rec.pivot = pivot;
  rec.dummy = m;
  rec.near.assign(near.begin(), near.end());
  rec.far.assign(far.begin(), far.end());

  for (const TreeEdge& e : tree.edges()) {
    const bool moved = (e.a == pivot && std::find(far.begin(), far.end(), e.b) != far.end()) ||
                       (e.b == pivot && std::find(far.begin(), far.end(), e.a) != far.end());
    if (moved) {
      const int other = e.a == pivot ? e.b : e.a;
      out.expanded_edges.push_back({m, other, e.length});
    } else {
      out.expanded_edges.push_back(e);
    }
  }
  out.expanded_edges.push_back({pivot, m, 0});

  rec.dummy_side.push_back(m);
  for (const int c : far) {
    const auto part = tree.component(c, pivot);
    rec.dummy_side.insert(rec.dummy_side.end(), part.begin(), part.end());
  }
  std::vector<char> on_dummy(m, 0);
  for (std::size_t p = 1; p < rec.dummy_side.size(); ++p) on_dummy[rec.dummy_side[p]] = 1;
  for (int c = 0; c < m; ++c) {
    if (!on_dummy[c]) rec.pivot_side.push_back(c);
  }

  rec.u_min.reserve(node_count);
  rec.u_max.reserve(node_count);
  rec.u.reserve(node_count);
  for (NodeId i = 0; i < node_count; ++i) {
    const auto g = unary.subspan(static_cast<std::size_t>(i) * m, m);
    if (const auto v = find_convexity_violation(tree, g)) {
      throw ConvexityError("node " + std::to_string(i) + " violates tree convexity at (" +
                           std::to_string(v->a) + ", " + std::to_string(v->b) + ", " +
                           std::to_string(v->c) + ")");
    }
    auto [lo, hi] = insertion_interval(tree, g, pivot, near, far);
    if (lo > hi) {
      throw ConvexityError("node " + std::to_string(i) + " has empty insertion interval [" +
                           lo.str() + ", " + hi.str() + "]; unary is not tree-convex");
    }
    const Rational chosen = selector(i, lo, hi);
    if (chosen < lo || chosen > hi) throw ConvexityError("selector left the insertion interval");
    rec.u_min.push_back(lo);
    rec.u_max.push_back(hi);
    rec.u.push_back(chosen);
  }
  return out;
}

}  // namespace kpotts
