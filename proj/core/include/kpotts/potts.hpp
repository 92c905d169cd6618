#pragma once

#include <span>
#include <vector>

#include "kpotts/types.hpp"

namespace kpotts {

struct Edge {
  NodeId i = 0;
  NodeId j = 0;
  Cost weight = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Potts energy f(x) = sum_i f_i(x_i) + sum_{ij} w_ij [x_i != x_j].
///
/// Immutable after construction. Edges are normalized to i < j and parallel
/// edges are merged by summing their weights (the energy is additive in them);
/// the first occurrence fixes the position of a merged edge.
class PottsInstance {
 public:
  PottsInstance() = default;

  /// `unary` is row-major, node_count x label_count.
  PottsInstance(NodeId node_count, Label label_count, std::vector<Cost> unary,
                std::vector<Edge> edges);

  NodeId node_count() const { return node_count_; }
  Label label_count() const { return label_count_; }

  Cost unary(NodeId i, Label a) const {
    return unary_[static_cast<std::size_t>(i) * label_count_ + a];
  }
  std::span<const Cost> unary_row(NodeId i) const {
    return {unary_.data() + static_cast<std::size_t>(i) * label_count_,
            static_cast<std::size_t>(label_count_)};
  }
  std::span<const Cost> unary_table() const { return unary_; }
  std::span<const Edge> edges() const { return edges_; }

  friend bool operator==(const PottsInstance&, const PottsInstance&) = default;

 private:
  NodeId node_count_ = 0;
  Label label_count_ = 0;
  std::vector<Cost> unary_;
  std::vector<Edge> edges_;
};

/// Returns a copy with every unary value and edge weight multiplied by `factor`.
PottsInstance scale_costs(const PottsInstance& inst, Cost factor);

/// Exact Potts energy of a full labeling. Throws InvalidLabeling on a
/// size mismatch or an entry outside L.
Cost energy(const PottsInstance& inst, std::span<const Label> x);

/// f_i(a-bar) = min_{b != a} f_i(b). Requires k >= 2.
Cost min_excluding(std::span<const Cost> row, Label a);

/// Per-node argmin of f_i, lowest index on ties.
std::vector<Label> unary_argmin(const PottsInstance& inst);

/// The auxiliary unary terms g_i over D = L u {o}:
/// g_i(o) = 0 and g_i(a) = f_i(a) - f_i(a-bar).
class AuxiliaryUnary {
 public:
  AuxiliaryUnary() = default;
  AuxiliaryUnary(NodeId node_count, Label label_count, std::vector<Cost> table);

  NodeId node_count() const { return node_count_; }
  Label label_count() const { return label_count_; }

  /// `a` may be kOutside.
  Cost value(NodeId i, Label a) const {
    const auto stride = static_cast<std::size_t>(label_count_) + 1;
    return table_[static_cast<std::size_t>(i) * stride + (a == kOutside ? label_count_ : a)];
  }
  /// k + 1 entries; the last one is g_i(o).
  std::span<const Cost> row(NodeId i) const {
    const auto stride = static_cast<std::size_t>(label_count_) + 1;
    return {table_.data() + static_cast<std::size_t>(i) * stride, stride};
  }

 private:
  NodeId node_count_ = 0;
  Label label_count_ = 0;
  std::vector<Cost> table_;
};

/// Throws DegenerateInstance when k < 2; callers handle k = 1 with the
/// constant labeling.
AuxiliaryUnary build_auxiliary(const PottsInstance& inst);

/// g(x) = sum_i g_i(x_i) + sum_{ij} w_ij d(x_i, x_j) on the unit star over
/// L u {o}; x may contain kOutside.
Cost auxiliary_energy(const PottsInstance& inst, const AuxiliaryUnary& aux,
                      std::span<const Label> x);

/// Distance in the unit star centred at o.
inline Cost star_distance(Label a, Label b) {
  if (a == b) return 0;
  return (a == kOutside || b == kOutside) ? 1 : 2;
}

/// Kovtun's binary function f^a on {a, a-bar}^V. Entries of y equal to `a`
/// mean a; kOutside means a-bar.
Cost eval_fa(const PottsInstance& inst, Label a, std::span<const Label> y);

/// x^y: nodes with y_i = a take label a, the rest keep x_i.
std::vector<Label> apply_persistent_label(std::span<const Label> x,
                                          std::span<const Label> y, Label a);

std::vector<Label> constant_labeling(NodeId n, Label a);

/// Fraction of entries different from kOutside; 1 for an empty labeling.
double labeled_fraction(std::span<const Label> x);

}  // namespace kpotts
