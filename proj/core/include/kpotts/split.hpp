#pragma once

#include <span>
#include <vector>

#include "kpotts/maxflow.hpp"
#include "kpotts/potts.hpp"
#include "kpotts/tree_metric.hpp"

namespace kpotts {

/// g(x) = sum_i g_i(x_i) + sum_{ij} w_ij d(x_i, x_j) over x in D^V, where d
/// is the metric of `tree` and D its node set. Labels are tree node indices.
struct SplitProblem {
  WeightedLabelTree tree;
  NodeId node_count = 0;
  std::vector<Cost> unary;  // node_count x tree.size(), row-major
  std::vector<Edge> pairs;

  int domain_size() const { return tree.size(); }
  Cost g(NodeId i, int c) const {
    return unary[static_cast<std::size_t>(i) * tree.size() + c];
  }
  std::span<const Cost> row(NodeId i) const {
    return {unary.data() + static_cast<std::size_t>(i) * tree.size(),
            static_cast<std::size_t>(tree.size())};
  }

  /// Throws StructuralError on size mismatches and ConvexityError when some
  /// unary row is not tree-convex.
  void validate() const;

  Cost evaluate(std::span<const int> x) const;
};

/// The auxiliary problem g on the unit star over L u {o}: label a < k is a
/// leaf and o is the centre k.
SplitProblem auxiliary_problem(const PottsInstance& inst);

struct SplitStats {
  int binary_solves = 0;
  int insertions = 0;
  int max_depth = 0;
  FlowStats flow;
};

/// Global minimizer of g (divide and conquer over tree edges, with edge
/// insertion when no edge splits the domain within a factor of two).
std::vector<int> split(const SplitProblem& problem, SplitStats* stats = nullptr);

/// Minimizer of g over {a, b}^V for the tree edge {a, b}; among ties the one
/// with the smallest a-set. Entries are a or b.
std::vector<int> solve_binary(const SplitProblem& problem, int a, int b,
                              FlowStats* stats = nullptr);

/// Minimizer of sum_i u_i [y_i = dummy] + sum w_ij [y_i != y_j] for an
/// insertion record. Entries are record.pivot or record.dummy.
std::vector<int> solve_binary(const SplitProblem& problem, const EdgeInsertion& record,
                              FlowStats* stats = nullptr);

/// g with every node outside `kept` fixed to label c. Returns the problem over
/// the kept nodes (in the given order) on the same tree and the constant so
/// that g(x-bar) = constant + restricted(x).
struct Restriction {
  SplitProblem problem;
  std::vector<NodeId> nodes;
  Cost constant = 0;
};
Restriction restrict_problem(const SplitProblem& problem, int c, std::span<const NodeId> kept);

/// Both sides of the coarea identity g(x) = const + sum_{ab} g(x^[ab]).
struct CoareaTerms {
  Cost lhs = 0;
  Cost rhs = 0;
  Cost constant = 0;
};
CoareaTerms coarea_check(const SplitProblem& problem, std::span<const int> x);

/// Componentwise: y_ab where y_bc = b, and b where y_bc = c.
std::vector<int> downarrow(std::span<const int> y_ab, std::span<const int> y_bc, int a, int b,
                           int c);

/// One binary labeling per tree edge (index into tree.edges()), entries
/// equal to an endpoint of that edge.
using BinaryFamily = std::vector<std::vector<int>>;

/// Projections x^[ab] of a labeling onto every tree edge.
BinaryFamily project_family(const SplitProblem& problem, std::span<const int> x);

/// True iff no adjacent edge pair {a,b},{b,c} and node i has
/// (y^ab_i, y^bc_i) = (a, c).
bool is_consistent(const SplitProblem& problem, const BinaryFamily& family);

/// Binary minimizers for every edge, grown outward from edge 0 and made
/// consistent with the down-arrow operation.
BinaryFamily consistent_family(const SplitProblem& problem, FlowStats* stats = nullptr);

/// The labeling whose projections are the given consistent family. Throws
/// StructuralError for an inconsistent family.
std::vector<int> labeling_from_family(const SplitProblem& problem, const BinaryFamily& family);

}  // namespace kpotts
