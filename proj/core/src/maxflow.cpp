#include "kpotts/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace kpotts {

namespace {
constexpr std::int32_t kInfiniteDist = std::numeric_limits<std::int32_t>::max();
}

FlowStats& FlowStats::operator+=(const FlowStats& o) {
  solves += o.solves;
  augmentations += o.augmentations;
  path_arcs += o.path_arcs;
  arc_scans += o.arc_scans;
  node_inits += o.node_inits;
  return *this;
}

FlowNetwork::FlowNetwork(NodeId node_count)
    : first_(node_count, kNoArc),
      tr_(node_count, 0),
      offset_(node_count, 0),
      parent_(node_count, kNoArc),
      is_sink_(node_count, 0),
      in_active_(node_count, 0),
      is_marked_(node_count, 0),
      ts_(node_count, 0),
      dist_(node_count, 0) {
  if (node_count < 0) throw StructuralError("negative node count");
}

FlowNetwork::EdgeId FlowNetwork::add_edge(NodeId i, NodeId j, Cost cap_ij, Cost cap_ji) {
  if (i < 0 || j < 0 || i >= node_count() || j >= node_count() || i == j) {
    throw StructuralError("invalid edge endpoints");
  }
  if (cap_ij < 0 || cap_ji < 0) throw StructuralError("negative arc capacity");
  const auto e = static_cast<EdgeId>(alive_.size());
  const ArcId a = 2 * e;
  head_.push_back(j);
  head_.push_back(i);
  next_.push_back(first_[i]);
  next_.push_back(first_[j]);
  first_[i] = a;
  first_[j] = a + 1;
  rcap_.push_back(cap_ij);
  rcap_.push_back(cap_ji);
  cap_.push_back(cap_ij);
  cap_.push_back(cap_ji);
  alive_.push_back(true);
  removed_flow_.push_back(0);
  if (trees_valid_) {
    mark(i);
    mark(j);
  }
  return e;
}

void FlowNetwork::update_terminal(NodeId i, Cost delta) {
  if (delta == 0) return;
  offset_[i] += delta;
  tr_[i] += delta;
  if (trees_valid_) mark(i);
}

void FlowNetwork::unlink_arc(NodeId from, ArcId a) {
  ArcId* link = &first_[from];
  while (*link != kNoArc && *link != a) link = &next_[*link];
  if (*link == kNoArc) throw StructuralError("arc not found in adjacency list");
  *link = next_[a];
}

void FlowNetwork::remove_edge_pair(EdgeId e) {
  if (e < 0 || e >= edge_count() || !alive_[e]) {
    throw StructuralError("edge " + std::to_string(e) + " does not exist");
  }
  const ArcId a = 2 * e;
  const NodeId i = head_[a + 1];
  const NodeId j = head_[a];
  const Cost f = cap_[a] - rcap_[a];
  removed_flow_[e] = f;
  unlink_arc(i, a);
  unlink_arc(j, a + 1);
  alive_[e] = false;
  rcap_[a] = 0;
  rcap_[a + 1] = 0;
  // The f units that crossed the edge now stay at i and never reach j.
  tr_[i] += f;
  tr_[j] -= f;
  if (trees_valid_) {
    mark(i);
    mark(j);
  }
}

void FlowNetwork::mark(NodeId i) {
  if (!is_marked_[i]) {
    is_marked_[i] = 1;
    marked_.push_back(i);
  }
}

void FlowNetwork::set_active(NodeId i) {
  if (!in_active_[i]) {
    in_active_[i] = 1;
    active_.push_back(i);
  }
}

NodeId FlowNetwork::next_active() {
  while (!active_.empty()) {
    const NodeId i = active_.front();
    active_.pop_front();
    in_active_[i] = 0;
    if (parent_[i] != kNoArc) return i;
  }
  return -1;
}

void FlowNetwork::set_orphan_front(NodeId i) {
  parent_[i] = kOrphan;
  orphans_.push_front(i);
}

void FlowNetwork::set_orphan_rear(NodeId i) {
  parent_[i] = kOrphan;
  orphans_.push_back(i);
}

void FlowNetwork::init_fresh() {
  active_.clear();
  orphans_.clear();
  ++time_;
  for (NodeId i = 0; i < node_count(); ++i) {
    in_active_[i] = 0;
    is_marked_[i] = 0;
    ts_[i] = time_;
    if (tr_[i] > 0) {
      is_sink_[i] = 0;
      parent_[i] = kTerminal;
      dist_[i] = 1;
      set_active(i);
    } else if (tr_[i] < 0) {
      is_sink_[i] = 1;
      parent_[i] = kTerminal;
      dist_[i] = 1;
      set_active(i);
    } else {
      parent_[i] = kNoArc;
    }
  }
  marked_.clear();
  stats_.node_inits += node_count();
}

// Re-roots every node whose terminal capacity or incident arcs changed since
// the last solve and repairs the trees around it; untouched nodes keep their
// search-tree position.
void FlowNetwork::init_reuse() {
  active_.clear();
  orphans_.clear();
  ++time_;
  for (const NodeId i : marked_) {
    ++stats_.node_inits;
    is_marked_[i] = 0;
    set_active(i);
    if (tr_[i] == 0) {
      if (parent_[i] != kNoArc) set_orphan_rear(i);
      continue;
    }
    if (tr_[i] > 0) {
      if (parent_[i] == kNoArc || is_sink_[i]) {
        is_sink_[i] = 0;
        for (ArcId a = first_[i]; a != kNoArc; a = next_[a]) {
          ++stats_.arc_scans;
          const NodeId j = head_[a];
          if (is_marked_[j]) continue;
          if (parent_[j] == sister(a)) set_orphan_rear(j);
          if (parent_[j] != kNoArc && is_sink_[j] && rcap_[a] > 0) set_active(j);
        }
      }
    } else {
      if (parent_[i] == kNoArc || !is_sink_[i]) {
        is_sink_[i] = 1;
        for (ArcId a = first_[i]; a != kNoArc; a = next_[a]) {
          ++stats_.arc_scans;
          const NodeId j = head_[a];
          if (is_marked_[j]) continue;
          if (parent_[j] == sister(a)) set_orphan_rear(j);
          if (parent_[j] != kNoArc && !is_sink_[j] && rcap_[sister(a)] > 0) set_active(j);
        }
      }
    }
    parent_[i] = kTerminal;
    ts_[i] = time_;
    dist_[i] = 1;
  }
  marked_.clear();
  adopt();
}

void FlowNetwork::augment(ArcId middle) {
  Cost bottleneck = rcap_[middle];
  NodeId i = head_[sister(middle)];
  for (;;) {
    const ArcId a = parent_[i];
    if (a == kTerminal) break;
    bottleneck = std::min(bottleneck, rcap_[sister(a)]);
    i = head_[a];
  }
  bottleneck = std::min(bottleneck, tr_[i]);
  i = head_[middle];
  for (;;) {
    const ArcId a = parent_[i];
    if (a == kTerminal) break;
    bottleneck = std::min(bottleneck, rcap_[a]);
    i = head_[a];
  }
  bottleneck = std::min(bottleneck, -tr_[i]);

  rcap_[sister(middle)] += bottleneck;
  rcap_[middle] -= bottleneck;
  ++stats_.path_arcs;
  i = head_[sister(middle)];
  for (;;) {
    const ArcId a = parent_[i];
    if (a == kTerminal) break;
    ++stats_.path_arcs;
    rcap_[a] += bottleneck;
    rcap_[sister(a)] -= bottleneck;
    if (rcap_[sister(a)] == 0) set_orphan_front(i);
    i = head_[a];
  }
  tr_[i] -= bottleneck;
  if (tr_[i] == 0) set_orphan_front(i);
  i = head_[middle];
  for (;;) {
    const ArcId a = parent_[i];
    if (a == kTerminal) break;
    ++stats_.path_arcs;
    rcap_[sister(a)] += bottleneck;
    rcap_[a] -= bottleneck;
    if (rcap_[a] == 0) set_orphan_front(i);
    i = head_[a];
  }
  tr_[i] += bottleneck;
  if (tr_[i] == 0) set_orphan_front(i);

  flow_ += bottleneck;
  ++stats_.augmentations;
}

void FlowNetwork::adopt() {
  while (!orphans_.empty()) {
    const NodeId i = orphans_.front();
    orphans_.pop_front();
    if (is_sink_[i]) {
      process_sink_orphan(i);
    } else {
      process_source_orphan(i);
    }
  }
}

void FlowNetwork::process_source_orphan(NodeId i) {
  ArcId best = kNoArc;
  std::int32_t d_min = kInfiniteDist;
  for (ArcId a0 = first_[i]; a0 != kNoArc; a0 = next_[a0]) {
    ++stats_.arc_scans;
    if (rcap_[sister(a0)] == 0) continue;
    NodeId j = head_[a0];
    if (is_sink_[j] || parent_[j] == kNoArc) continue;
    std::int32_t d = 0;
    for (;;) {
      if (ts_[j] == time_) {
        d += dist_[j];
        break;
      }
      const ArcId a = parent_[j];
      ++d;
      if (a == kTerminal) {
        ts_[j] = time_;
        dist_[j] = 1;
        break;
      }
      if (a == kOrphan) {
        d = kInfiniteDist;
        break;
      }
      j = head_[a];
    }
    if (d < kInfiniteDist) {
      if (d < d_min) {
        best = a0;
        d_min = d;
      }
      for (j = head_[a0]; ts_[j] != time_; j = head_[parent_[j]]) {
        ts_[j] = time_;
        dist_[j] = d--;
      }
    }
  }

  parent_[i] = best;
  if (best != kNoArc) {
    ts_[i] = time_;
    dist_[i] = d_min + 1;
    return;
  }
  for (ArcId a0 = first_[i]; a0 != kNoArc; a0 = next_[a0]) {
    ++stats_.arc_scans;
    const NodeId j = head_[a0];
    const ArcId a = parent_[j];
    if (is_sink_[j] || a == kNoArc) continue;
    if (rcap_[sister(a0)] > 0) set_active(j);
    if (a != kTerminal && a != kOrphan && head_[a] == i) set_orphan_rear(j);
  }
}

void FlowNetwork::process_sink_orphan(NodeId i) {
  ArcId best = kNoArc;
  std::int32_t d_min = kInfiniteDist;
  for (ArcId a0 = first_[i]; a0 != kNoArc; a0 = next_[a0]) {
    ++stats_.arc_scans;
    if (rcap_[a0] == 0) continue;
    NodeId j = head_[a0];
    if (!is_sink_[j] || parent_[j] == kNoArc) continue;
    std::int32_t d = 0;
    for (;;) {
      if (ts_[j] == time_) {
        d += dist_[j];
        break;
      }
      const ArcId a = parent_[j];
      ++d;
      if (a == kTerminal) {
        ts_[j] = time_;
        dist_[j] = 1;
        break;
      }
      if (a == kOrphan) {
        d = kInfiniteDist;
        break;
      }
      j = head_[a];
    }
    if (d < kInfiniteDist) {
      if (d < d_min) {
        best = a0;
        d_min = d;
      }
      for (j = head_[a0]; ts_[j] != time_; j = head_[parent_[j]]) {
        ts_[j] = time_;
        dist_[j] = d--;
      }
    }
  }

  parent_[i] = best;
  if (best != kNoArc) {
    ts_[i] = time_;
    dist_[i] = d_min + 1;
    return;
  }
  for (ArcId a0 = first_[i]; a0 != kNoArc; a0 = next_[a0]) {
    ++stats_.arc_scans;
    const NodeId j = head_[a0];
    const ArcId a = parent_[j];
    if (!is_sink_[j] || a == kNoArc) continue;
    if (rcap_[a0] > 0) set_active(j);
    if (a != kTerminal && a != kOrphan && head_[a] == i) set_orphan_rear(j);
  }
}

CutResult FlowNetwork::solve() {
  ++stats_.solves;
  if (reuse_trees_ && trees_valid_) {
    init_reuse();
  } else {
    init_fresh();
  }
  trees_valid_ = true;

  NodeId current = -1;
  for (;;) {
    NodeId i = current;
    if (i >= 0) {
      in_active_[i] = 0;
      if (parent_[i] == kNoArc) i = -1;
    }
    if (i < 0) {
      i = next_active();
      if (i < 0) break;
    }

    ArcId meet = kNoArc;
    if (!is_sink_[i]) {
      for (ArcId a = first_[i]; a != kNoArc; a = next_[a]) {
        ++stats_.arc_scans;
        if (rcap_[a] == 0) continue;
        const NodeId j = head_[a];
        if (parent_[j] == kNoArc) {
          is_sink_[j] = 0;
          parent_[j] = sister(a);
          ts_[j] = ts_[i];
          dist_[j] = dist_[i] + 1;
          set_active(j);
        } else if (is_sink_[j]) {
          meet = a;
          break;
        } else if (ts_[j] <= ts_[i] && dist_[j] > dist_[i]) {
          parent_[j] = sister(a);
          ts_[j] = ts_[i];
          dist_[j] = dist_[i] + 1;
        }
      }
    } else {
      for (ArcId a = first_[i]; a != kNoArc; a = next_[a]) {
        ++stats_.arc_scans;
        if (rcap_[sister(a)] == 0) continue;
        const NodeId j = head_[a];
        if (parent_[j] == kNoArc) {
          is_sink_[j] = 1;
          parent_[j] = sister(a);
          ts_[j] = ts_[i];
          dist_[j] = dist_[i] + 1;
          set_active(j);
        } else if (!is_sink_[j]) {
          meet = sister(a);
          break;
        } else if (ts_[j] <= ts_[i] && dist_[j] > dist_[i]) {
          parent_[j] = sister(a);
          ts_[j] = ts_[i];
          dist_[j] = dist_[i] + 1;
        }
      }
    }

    ++time_;
    if (meet != kNoArc) {
      in_active_[i] = 1;  // keep i current without queueing it again
      current = i;
      augment(meet);
      adopt();
    } else {
      current = -1;
    }
  }

  CutResult out;
  out.side = source_side();
  out.value = cut_value();
  return out;
}

Cost FlowNetwork::cut_value() const { return cut_capacity(source_side()); }

std::vector<Side> FlowNetwork::source_side() const {
  std::vector<Side> side(node_count(), Side::Sink);
  std::vector<NodeId> stack;
  for (NodeId i = 0; i < node_count(); ++i) {
    if (tr_[i] > 0) {
      side[i] = Side::Source;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    const NodeId i = stack.back();
    stack.pop_back();
    for (ArcId a = first_[i]; a != kNoArc; a = next_[a]) {
      const NodeId j = head_[a];
      if (rcap_[a] > 0 && side[j] == Side::Sink) {
        side[j] = Side::Source;
        stack.push_back(j);
      }
    }
  }
  return side;
}

std::vector<Side> FlowNetwork::max_source_side() const {
  std::vector<Side> side(node_count(), Side::Source);
  std::vector<NodeId> stack;
  for (NodeId i = 0; i < node_count(); ++i) {
    if (tr_[i] < 0) {
      side[i] = Side::Sink;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    const NodeId j = stack.back();
    stack.pop_back();
    // i reaches j through arc i->j, the sister of a = j->i.
    for (ArcId a = first_[j]; a != kNoArc; a = next_[a]) {
      const NodeId i = head_[a];
      if (rcap_[sister(a)] > 0 && side[i] == Side::Source) {
        side[i] = Side::Sink;
        stack.push_back(i);
      }
    }
  }
  return side;
}

Cost FlowNetwork::edge_flow(EdgeId e) const {
  if (!alive_.at(e)) return removed_flow_[e];
  return cap_[2 * e] - rcap_[2 * e];
}

std::vector<Cost> FlowNetwork::edge_flows() const {
  std::vector<Cost> out(alive_.size());
  for (EdgeId e = 0; e < edge_count(); ++e) out[e] = edge_flow(e);
  return out;
}

Cost FlowNetwork::cut_capacity(std::span<const Side> side) const {
  if (side.size() != static_cast<std::size_t>(node_count())) {
    throw StructuralError("cut size does not match node count");
  }
  Cost value = 0;
  for (NodeId i = 0; i < node_count(); ++i) {
    if (side[i] == Side::Sink) {
      value += std::max<Cost>(offset_[i], 0);
    } else {
      value += std::max<Cost>(-offset_[i], 0);
    }
  }
  for (EdgeId e = 0; e < edge_count(); ++e) {
    if (!alive_[e]) continue;
    const NodeId i = edge_tail(e);
    const NodeId j = edge_head(e);
    if (side[i] == Side::Source && side[j] == Side::Sink) value += cap_[2 * e];
    if (side[j] == Side::Source && side[i] == Side::Sink) value += cap_[2 * e + 1];
  }
  return value;
}

}  // namespace kpotts
