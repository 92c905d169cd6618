#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "kpotts/rational.hpp"
#include "kpotts/types.hpp"

namespace kpotts {

struct TreeEdge {
  int a = 0;
  int b = 0;
  Cost length = 1;
};

/// Weighted tree T = (D, E, d) over nodes {0..size-1} with positive integer
/// edge lengths. The induced tree metric d(a, b) is the length of the unique
/// a-b path; all pairwise distances are precomputed.
class WeightedLabelTree {
 public:
  struct Neighbor {
    int node;
    Cost length;
    int edge;
  };

  WeightedLabelTree() = default;
  /// Throws StructuralError unless the edges form a spanning tree with
  /// positive lengths.
  WeightedLabelTree(int size, std::vector<TreeEdge> edges);

  /// Star with `leaves` leaves 0..leaves-1 around the centre `leaves`.
  static WeightedLabelTree star(int leaves, Cost length = 1);

  int size() const { return size_; }
  std::span<const TreeEdge> edges() const { return edges_; }
  std::span<const Neighbor> neighbors(int a) const { return adjacency_.at(a); }
  int degree(int a) const { return static_cast<int>(adjacency_.at(a).size()); }

  Cost distance(int a, int b) const;

  /// Index of edge {a, b}, or -1 when a and b are not adjacent.
  int find_edge(int a, int b) const;

  /// Nodes on a's side after deleting edge {a, b}, ascending.
  std::vector<int> component(int a, int b) const;

 private:
  int size_ = 0;
  std::vector<TreeEdge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<Cost> dist_;
};

/// Adjacent edge pair {a,b},{b,c} violating
/// d(a,c) g(b) <= d(b,c) g(a) + d(a,b) g(c).
struct ConvexityViolation {
  int a;
  int b;
  int c;
};

/// First violating triple in (b, a, c) scan order, or nullopt when `g`
/// (one value per tree node) is T-convex.
std::optional<ConvexityViolation> find_convexity_violation(const WeightedLabelTree& tree,
                                                           std::span<const Cost> g);

inline bool is_t_convex(const WeightedLabelTree& tree, std::span<const Cost> g) {
  return !find_convexity_violation(tree, g).has_value();
}

/// x^{[ab]}: each entry replaced by the endpoint of edge {a, b} nearest to it.
std::vector<int> project_to_edge(const WeightedLabelTree& tree, std::span<const int> x, int a,
                                 int b);

/// Chooses u_i in [lo, hi] for node i.
using UnarySelector = std::function<Rational(NodeId i, const Rational& lo, const Rational& hi)>;

/// Selector returning the point of the interval closest to reference[i].
UnarySelector clamp_to(std::vector<Rational> reference);

/// Record of one rebalancing insertion: a new node `dummy` is attached to
/// `pivot`, the `far` neighbours of the pivot are re-hung below the dummy and
/// the `near` ones stay. The new edge has infinitesimal length, so it never
/// appears numerically; the binary problem on {pivot, dummy} reduces to unary
/// weights u_i on the dummy side plus the original pairwise weights.
struct EdgeInsertion {
  int pivot = 0;
  int dummy = 0;
  std::vector<int> near;
  std::vector<int> far;
  std::vector<Rational> u_min;
  std::vector<Rational> u_max;
  std::vector<Rational> u;
  std::vector<int> pivot_side;  // nodes of the pivot component, ascending
  std::vector<int> dummy_side;  // dummy first, then the re-hung subtrees
};

struct InsertionResult {
  /// Tree with the dummy node (index tree.size()) and the infinitesimal edge
  /// recorded as length 0.
  std::vector<TreeEdge> expanded_edges;
  EdgeInsertion record;
};

/// `unary` is row-major, node_count x tree.size(). Throws StructuralError on
/// a bad neighbour partition and ConvexityError when some interval is empty.
InsertionResult insert_edge(const WeightedLabelTree& tree, std::span<const Cost> unary,
                            NodeId node_count, int pivot, std::span<const int> near,
                            std::span<const int> far, const UnarySelector& selector);

/// The interval [u_min, u_max] for one unary row.
std::pair<Rational, Rational> insertion_interval(const WeightedLabelTree& tree,
                                                 std::span<const Cost> g, int pivot,
                                                 std::span<const int> near,
                                                 std::span<const int> far);

}  // namespace kpotts
