#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "kpotts/types.hpp"

namespace kpotts {

enum class Side : std::uint8_t { Source, Sink };

/// Work counters accumulated over every solve() of a network.
struct FlowStats {
  std::int64_t solves = 0;
  std::int64_t augmentations = 0;
  std::int64_t path_arcs = 0;   // arcs traversed while augmenting
  std::int64_t arc_scans = 0;   // arcs examined by growth and adoption
  std::int64_t node_inits = 0;  // nodes touched when (re)initializing trees

  std::int64_t work() const { return path_arcs + arc_scans + node_inits; }
  FlowStats& operator+=(const FlowStats& o);
};

struct CutResult {
  std::vector<Side> side;
  Cost value = 0;
};

/// s-t network over nodes {0..n-1} with one signed terminal offset per node.
///
/// The encoded cut function is
///   C(S, T) = sum_i u_i [i in T] + sum_{(i->j)} cap_ij [i in S, j in T]
/// so u_i > 0 is an arc s->i of capacity u_i and u_i < 0 an arc i->t of
/// capacity -u_i. The network keeps its residual state between solves:
/// update_terminal() and remove_edge_pair() reparameterize it so that the
/// next solve() continues from the previous flow, and the search trees are
/// recycled for nodes that were not touched.
class FlowNetwork {
 public:
  using EdgeId = std::int32_t;

  explicit FlowNetwork(NodeId node_count = 0);

  NodeId node_count() const { return static_cast<NodeId>(tr_.size()); }
  EdgeId edge_count() const { return static_cast<EdgeId>(alive_.size()); }

  /// Adds arcs i->j and j->i as one residual pair.
  EdgeId add_edge(NodeId i, NodeId j, Cost cap_ij, Cost cap_ji);

  /// u_i += delta.
  void update_terminal(NodeId i, Cost delta);

  /// Deletes both arcs of an edge. Its current flow is handed back to the
  /// terminals of the endpoints, so the residual stays a valid flow of the
  /// smaller network. Throws StructuralError for a missing edge.
  void remove_edge_pair(EdgeId e);

  bool edge_alive(EdgeId e) const { return alive_.at(e); }
  NodeId edge_tail(EdgeId e) const { return head_[2 * e + 1]; }
  NodeId edge_head(EdgeId e) const { return head_[2 * e]; }
  Cost edge_capacity(EdgeId e) const { return cap_[2 * e]; }
  Cost edge_reverse_capacity(EdgeId e) const { return cap_[2 * e + 1]; }

  Cost offset(NodeId i) const { return offset_[i]; }

  /// Computes a maximum flow from the current residual state and returns the
  /// canonical cut: the source side is every node reachable from s.
  CutResult solve();

  void set_reuse_trees(bool on) { reuse_trees_ = on; }

  /// Value of the minimum cut, counted as the capacity of the fresh network
  /// built from the current offsets and capacities. Valid after solve().
  Cost cut_value() const;

  /// Total flow pushed by augmentations since construction.
  Cost flow_value() const { return flow_; }

  /// Nodes reachable from s in the residual graph.
  std::vector<Side> source_side() const;

  /// Complement of the nodes that can reach t: the largest source side among
  /// all minimum cuts.
  std::vector<Side> max_source_side() const;

  /// Net flow i->j on edge e (cap_ij minus residual i->j). For a removed
  /// edge this is the flow it carried when it was removed.
  Cost edge_flow(EdgeId e) const;
  std::vector<Cost> edge_flows() const;

  /// Capacity of an arbitrary cut of the fresh network.
  Cost cut_capacity(std::span<const Side> side) const;

  const FlowStats& stats() const { return stats_; }

 private:
  using ArcId = std::int32_t;
  static constexpr ArcId kNoArc = -1;
  static constexpr ArcId kTerminal = -2;
  static constexpr ArcId kOrphan = -3;

  static ArcId sister(ArcId a) { return a ^ 1; }

  void init_fresh();
  void init_reuse();
  void mark(NodeId i);
  void set_active(NodeId i);
  NodeId next_active();
  void augment(ArcId middle);
  void adopt();
  void process_source_orphan(NodeId i);
  void process_sink_orphan(NodeId i);
  void set_orphan_front(NodeId i);
  void set_orphan_rear(NodeId i);
  void unlink_arc(NodeId from, ArcId a);

  // Arcs come in pairs 2e (tail->head) and 2e+1 (head->tail).
  std::vector<NodeId> head_;
  std::vector<ArcId> next_;
  std::vector<Cost> rcap_;
  std::vector<Cost> cap_;
  std::vector<bool> alive_;
  std::vector<Cost> removed_flow_;

  // Per node.
  std::vector<ArcId> first_;
  std::vector<Cost> tr_;  // residual s->i minus residual i->t
  std::vector<Cost> offset_;
  std::vector<ArcId> parent_;
  std::vector<std::uint8_t> is_sink_;
  std::vector<std::uint8_t> in_active_;
  std::vector<std::uint8_t> is_marked_;
  std::vector<std::int64_t> ts_;
  std::vector<std::int32_t> dist_;

  std::deque<NodeId> active_;
  std::deque<NodeId> orphans_;
  std::vector<NodeId> marked_;

  std::int64_t time_ = 0;
  Cost flow_ = 0;
  bool trees_valid_ = false;
  bool reuse_trees_ = true;
  FlowStats stats_;
};

}  // namespace kpotts
