#pragma once

#include <string>
#include <vector>

#include "kpotts/label_tree.hpp"
#include "kpotts/maxflow.hpp"
#include "kpotts/potts.hpp"

namespace kpotts {

/// Partial labeling with per-label binary minimizers.
struct PersistencyResult {
  /// x_i in L is a persistent label; kOutside means unlabeled.
  std::vector<Label> x;
  /// y[a][i] != 0 iff node i takes label a in the minimizer of f^a.
  std::vector<std::vector<char>> y;
  /// f^a evaluated at y[a].
  std::vector<Cost> binary_values;
  /// Leaf label of every node in the binary-tree schedule (fast variant only).
  std::vector<Label> kovtun_labeling;
  int maxflow_phases = 0;
  /// Nodes taking part in each phase.
  std::vector<NodeId> phase_nodes;
  /// Nodes claimed by more than one label; the highest label wins.
  NodeId overlaps = 0;
  FlowStats flow;

  double labeled_fraction() const { return kpotts::labeled_fraction(x); }
};

/// One independent mincut of f^a per label. Ties are broken towards the
/// smallest a-set.
PersistencyResult naive_kovtun(const PottsInstance& inst);

struct KovtunOptions {
  /// Recompute the child interval from the full unary table and throw
  /// std::logic_error if the shortcut disagrees.
  bool verify_interval = false;
  bool reuse_trees = true;
};

/// State of a fast run kept for flow extraction and the monotonicity check.
struct KovtunRun {
  PersistencyResult result;
  LabelTree tree;
  /// Label-tree leaf of every node.
  std::vector<int> leaf;
  /// Per instance edge, flow i->j (i < j): frozen when the edge was cut, or
  /// taken right before the leaf phase for edges still present there.
  std::vector<Cost> xi_before_leaves;
  /// Per instance edge, flow i->j after the last phase.
  std::vector<Cost> xi_final;
  /// c-values along the root-to-leaf path of every node, one per depth.
  std::vector<std::vector<Cost>> trajectory;
};

/// Kovtun's k binary problems in ceil(1 + log2 k) maxflow phases on a single
/// graph, driven by the balanced label tree.
KovtunRun fast_kovtun(const PottsInstance& inst, const KovtunOptions& options = {});

/// Edge flows for f^a assembled from the two stored snapshots by the
/// least-common-ancestor rule; indexed like inst.edges(), oriented i->j.
std::vector<Cost> extract_label_flow(const KovtunRun& run, const PottsInstance& inst, Label a);

struct FlowCheck {
  bool feasible = false;
  bool maximal = false;
  /// sum_i min(f_i(a-bar), f_i(a) + e_i) for net edge outflows e_i; a lower
  /// bound on f^a that is attained exactly by maximum flows.
  Cost value = 0;
  std::string violation;  // first violated constraint, empty if none

  bool ok() const { return feasible && maximal; }
};

/// Checks edge flows for f^a. Every node has both terminal links, so only the
/// edge capacities w_ij constrain feasibility; the terminal flows follow from
/// the node excesses. Maximal means no residual path from a node with
/// e_i < u_i to one with e_i > u_i, where u_i = f_i(a-bar) - f_i(a).
FlowCheck verify_label_flow(const PottsInstance& inst, Label a, const std::vector<Cost>& flow);

/// Largest a-set among all minimizers of f^a, read off the residual graph of
/// a maximum flow.
std::vector<char> maximal_label_set(const PottsInstance& inst, Label a,
                                    const std::vector<Cost>& flow);

struct MaximizedPersistency {
  PersistencyResult result;
  /// Labels whose extracted flow failed verification and were re-solved.
  std::vector<Label> resolved;
};

/// The maximal-source-side variant of a fast run: per label the largest
/// minimizing a-set, computed from the extracted flow when it verifies and
/// from a fresh solve otherwise.
MaximizedPersistency maximize_persistency(const KovtunRun& run, const PottsInstance& inst);

/// True iff the c-values of node i over the non-leaf nodes of its path are
/// non-decreasing in the inorder of the label tree.
bool monotonicity_check(const KovtunRun& run, NodeId i);

/// The f^a network: terminal offset -g_i(a) and capacity w_ij both ways.
FlowNetwork label_network(const PottsInstance& inst, Label a);

}  // namespace kpotts
