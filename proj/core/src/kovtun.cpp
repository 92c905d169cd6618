#include "kpotts/kovtun.hpp"

#include <algorithm>
#include <stdexcept>

namespace kpotts {

namespace {

std::vector<Label> as_fa_labeling(const std::vector<char>& in_a, Label a) {
  std::vector<Label> y(in_a.size());
  for (std::size_t i = 0; i < in_a.size(); ++i) y[i] = in_a[i] ? a : kOutside;
  return y;
}

// x from per-label sets: ascending labels, later labels overwrite.
void assemble(const PottsInstance& inst, PersistencyResult& r) {
  const NodeId n = inst.node_count();
  r.x.assign(n, kOutside);
  std::vector<char> claimed_twice(n, 0);
  for (Label a = 0; a < static_cast<Label>(r.y.size()); ++a) {
    for (NodeId i = 0; i < n; ++i) {
      if (!r.y[a][i]) continue;
      if (r.x[i] != kOutside) claimed_twice[i] = 1;
      r.x[i] = a;
    }
  }
  r.overlaps = static_cast<NodeId>(std::count(claimed_twice.begin(), claimed_twice.end(), 1));
  r.binary_values.clear();
  if (inst.label_count() < 2) return;
  for (Label a = 0; a < static_cast<Label>(r.y.size()); ++a) {
    r.binary_values.push_back(eval_fa(inst, a, as_fa_labeling(r.y[a], a)));
  }
}

PersistencyResult single_label(const PottsInstance& inst) {
  PersistencyResult r;
  r.x = constant_labeling(inst.node_count(), 0);
  r.y.assign(1, std::vector<char>(inst.node_count(), 1));
  r.kovtun_labeling = r.x;
  return r;
}

// g_i(a) from the two smallest unary values.
struct UnarySummary {
  Label best = 0;
  Cost first = 0;
  Cost second = 0;
};

UnarySummary summarize(std::span<const Cost> row) {
  UnarySummary s;
  s.first = row[0];
  s.second = row[1];
  if (row[1] < row[0]) {
    s.best = 1;
    std::swap(s.first, s.second);
  }
  for (std::size_t a = 2; a < row.size(); ++a) {
    if (row[a] < s.first) {
      s.second = s.first;
      s.first = row[a];
      s.best = static_cast<Label>(a);
    } else if (row[a] < s.second) {
      s.second = row[a];
    }
  }
  return s;
}

}  // namespace

FlowNetwork label_network(const PottsInstance& inst, Label a) {
  if (inst.label_count() < 2) throw DegenerateInstance("f^a needs at least two labels");
  FlowNetwork net(inst.node_count());
  for (NodeId i = 0; i < inst.node_count(); ++i) {
    const auto row = inst.unary_row(i);
    net.update_terminal(i, min_excluding(row, a) - row[a]);
  }
  for (const Edge& e : inst.edges()) net.add_edge(e.i, e.j, e.weight, e.weight);
  return net;
}

PersistencyResult naive_kovtun(const PottsInstance& inst) {
  if (inst.label_count() == 1) return single_label(inst);
  const Label k = inst.label_count();
  PersistencyResult r;
  r.y.assign(k, std::vector<char>(inst.node_count(), 0));
  for (Label a = 0; a < k; ++a) {
    FlowNetwork net = label_network(inst, a);
    const CutResult cut = net.solve();
    for (NodeId i = 0; i < inst.node_count(); ++i) r.y[a][i] = cut.side[i] == Side::Source;
    r.flow += net.stats();
    r.phase_nodes.push_back(inst.node_count());
  }
  r.maxflow_phases = k;
  assemble(inst, r);
  return r;
}

KovtunRun fast_kovtun(const PottsInstance& inst, const KovtunOptions& options) {
  KovtunRun run;
  const NodeId n = inst.node_count();
  const Label k = inst.label_count();
  const auto edges = inst.edges();
  run.xi_before_leaves.assign(edges.size(), 0);
  run.xi_final.assign(edges.size(), 0);
  if (k == 1) {
    run.result = single_label(inst);
    run.tree = LabelTree(1);
    run.leaf.assign(n, run.tree.leaf_of(0));
    run.trajectory.assign(n, {});
    return run;
  }

  run.tree = LabelTree(k);
  const LabelTree& tree = run.tree;
  std::vector<UnarySummary> summary(n);
  for (NodeId i = 0; i < n; ++i) summary[i] = summarize(inst.unary_row(i));
  auto g = [&](NodeId i, Label a) {
    const UnarySummary& s = summary[i];
    return a == s.best ? s.first - s.second : inst.unary(i, a) - s.first;
  };

  std::vector<Cost> go(n, 0);  // g_i(o), lowered when incident edges are cut
  std::vector<Cost> u(n, 0);   // terminal offset currently encoded
  std::vector<Cost> c(n, 0);
  std::vector<int> omega(n, tree.root());
  std::vector<char> done(n, 0);
  run.trajectory.assign(n, {});

  FlowNetwork net(n);
  net.set_reuse_trees(options.reuse_trees);
  std::vector<FlowNetwork::EdgeId> net_edge(edges.size(), -1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].weight > 0) net_edge[e] = net.add_edge(edges[e].i, edges[e].j, edges[e].weight, edges[e].weight);
  }

  auto child_offset = [&](NodeId i, const LabelTree::Node& A) {
    const Label mid = tree.node(A.left).hi;
    const UnarySummary& s = summary[i];
    const Cost gstar = s.first - s.second;
    Cost t = u[i];
    if (A.lo <= s.best && s.best < mid) {
      t = std::max(u[i], go[i] - gstar);
    } else if (mid <= s.best && s.best < A.hi) {
      t = std::min(u[i], gstar - go[i]);
    }
    if (options.verify_interval) {
      Cost min_l = g(i, A.lo);
      for (Label a = A.lo + 1; a < mid; ++a) min_l = std::min(min_l, g(i, a));
      Cost min_r = g(i, mid);
      for (Label a = mid + 1; a < A.hi; ++a) min_r = std::min(min_r, g(i, a));
      const Cost lo = go[i] - min_l;
      const Cost hi = min_r - go[i];
      if (lo > hi || std::clamp(u[i], lo, hi) != t) {
        throw std::logic_error("interval shortcut disagrees with the full interval at node " +
                               std::to_string(i));
      }
    }
    return t;
  };

  PersistencyResult& r = run.result;
  r.y.assign(k, std::vector<char>(n, 0));
  for (int depth = 0; depth < tree.levels(); ++depth) {
    NodeId active = 0;
    for (NodeId i = 0; i < n; ++i) {
      if (done[i]) continue;
      ++active;
      const auto& A = tree.node(omega[i]);
      const Cost target = A.is_leaf() ? go[i] - g(i, A.lo) : child_offset(i, A);
      const Cost delta = target - u[i];
      net.update_terminal(i, delta);
      u[i] = target;
      c[i] = depth == 0 ? target : c[i] + delta;
      run.trajectory[i].push_back(c[i]);
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const NodeId i = edges[e].i;
      if (net_edge[e] < 0 || !net.edge_alive(net_edge[e]) || done[i]) continue;
      if (tree.node(omega[i]).is_leaf()) run.xi_before_leaves[e] = net.edge_flow(net_edge[e]);
    }

    const CutResult cut = net.solve();

    // Cut edges between the two children of a non-leaf node: cancel their
    // saturating flow through the terminals and drop them.
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (net_edge[e] < 0 || !net.edge_alive(net_edge[e])) continue;
      const NodeId i = edges[e].i;
      const NodeId j = edges[e].j;
      if (done[i] || tree.node(omega[i]).is_leaf() || cut.side[i] == cut.side[j]) continue;
      const NodeId p = cut.side[i] == Side::Source ? i : j;
      const NodeId q = p == i ? j : i;
      const Cost w = edges[e].weight;
      net.update_terminal(p, -w);
      net.update_terminal(q, w);
      u[p] -= w;
      u[q] += w;
      net.remove_edge_pair(net_edge[e]);
      run.xi_before_leaves[e] = net.edge_flow(net_edge[e]);
      go[p] -= w;
      go[q] -= w;
    }
    for (NodeId i = 0; i < n; ++i) {
      if (done[i]) continue;
      const auto& A = tree.node(omega[i]);
      const bool source = cut.side[i] == Side::Source;
      if (A.is_leaf()) {
        done[i] = 1;
        r.y[A.lo][i] = source;
      } else {
        omega[i] = source ? A.left : A.right;
      }
    }
    r.phase_nodes.push_back(active);
  }

  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (net_edge[e] >= 0) run.xi_final[e] = net.edge_flow(net_edge[e]);
  }
  run.leaf = omega;
  r.kovtun_labeling.resize(n);
  for (NodeId i = 0; i < n; ++i) r.kovtun_labeling[i] = tree.node(omega[i]).lo;
  r.maxflow_phases = tree.levels();
  r.flow = net.stats();
  assemble(inst, r);
  return run;
}

std::vector<Cost> extract_label_flow(const KovtunRun& run, const PottsInstance& inst, Label a) {
  const auto edges = inst.edges();
  std::vector<Cost> flow(edges.size(), 0);
  if (inst.label_count() < 2) return flow;
  const int leaf_a = run.tree.leaf_of(a);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const int li = run.leaf[edges[e].i];
    const int lj = run.leaf[edges[e].j];
    if (li == leaf_a && lj == leaf_a) {
      flow[e] = run.xi_final[e];
      continue;
    }
    const int top = run.tree.lca(run.tree.lca(li, lj), leaf_a);
    flow[e] = run.tree.in_left_subtree(top, leaf_a) ? run.xi_before_leaves[e]
                                                    : -run.xi_before_leaves[e];
  }
  return flow;
}

namespace {

struct LabelNetworkView {
  std::vector<Cost> u;       // terminal offset, source = label a
  std::vector<Cost> excess;  // net edge outflow of every node
};

LabelNetworkView view(const PottsInstance& inst, Label a, const std::vector<Cost>& flow) {
  LabelNetworkView v;
  v.u.resize(inst.node_count());
  v.excess.assign(inst.node_count(), 0);
  for (NodeId i = 0; i < inst.node_count(); ++i) {
    const auto row = inst.unary_row(i);
    v.u[i] = min_excluding(row, a) - row[a];
  }
  const auto edges = inst.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    v.excess[edges[e].i] += flow[e];
    v.excess[edges[e].j] -= flow[e];
  }
  return v;
}

// Nodes that reach t in the residual graph.
std::vector<char> reaches_sink(const PottsInstance& inst, const LabelNetworkView& v,
                               const std::vector<Cost>& flow) {
  const NodeId n = inst.node_count();
  std::vector<std::vector<std::pair<NodeId, Cost>>> into(n);  // (from, residual from->to)
  const auto edges = inst.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    into[edges[e].j].push_back({edges[e].i, edges[e].weight - flow[e]});
    into[edges[e].i].push_back({edges[e].j, edges[e].weight + flow[e]});
  }
  std::vector<char> mark(n, 0);
  std::vector<NodeId> stack;
  for (NodeId i = 0; i < n; ++i) {
    if (v.excess[i] > v.u[i]) {
      mark[i] = 1;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    const NodeId j = stack.back();
    stack.pop_back();
    for (const auto& [i, res] : into[j]) {
      if (res > 0 && !mark[i]) {
        mark[i] = 1;
        stack.push_back(i);
      }
    }
  }
  return mark;
}

}  // namespace

FlowCheck verify_label_flow(const PottsInstance& inst, Label a, const std::vector<Cost>& flow) {
  FlowCheck check;
  const auto edges = inst.edges();
  if (flow.size() != edges.size()) {
    check.violation = "flow has the wrong number of edges";
    return check;
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (flow[e] > edges[e].weight || -flow[e] > edges[e].weight) {
      check.violation = "edge " + std::to_string(e) + " carries " + std::to_string(flow[e]) +
                        " over capacity " + std::to_string(edges[e].weight);
      return check;
    }
  }
  check.feasible = true;
  const auto v = view(inst, a, flow);
  for (NodeId i = 0; i < inst.node_count(); ++i) {
    const auto row = inst.unary_row(i);
    check.value += std::min(min_excluding(row, a), row[a] + v.excess[i]);
  }

  const auto to_sink = reaches_sink(inst, v, flow);
  for (NodeId i = 0; i < inst.node_count(); ++i) {
    if (v.excess[i] < v.u[i] && to_sink[i]) {
      check.violation = "augmenting path through node " + std::to_string(i);
      return check;
    }
  }
  check.maximal = true;
  return check;
}

std::vector<char> maximal_label_set(const PottsInstance& inst, Label a,
                                    const std::vector<Cost>& flow) {
  const auto v = view(inst, a, flow);
  auto out = reaches_sink(inst, v, flow);
  for (auto& m : out) m = !m;
  return out;
}

MaximizedPersistency maximize_persistency(const KovtunRun& run, const PottsInstance& inst) {
  MaximizedPersistency mp;
  PersistencyResult& r = mp.result;
  r.kovtun_labeling = run.result.kovtun_labeling;
  r.maxflow_phases = run.result.maxflow_phases;
  r.phase_nodes = run.result.phase_nodes;
  r.flow = run.result.flow;
  if (inst.label_count() == 1) {
    r = run.result;
    return mp;
  }
  r.y.resize(inst.label_count());
  for (Label a = 0; a < inst.label_count(); ++a) {
    const auto flow = extract_label_flow(run, inst, a);
    if (verify_label_flow(inst, a, flow).ok()) {
      r.y[a] = maximal_label_set(inst, a, flow);
      continue;
    }
    mp.resolved.push_back(a);
    FlowNetwork net = label_network(inst, a);
    net.solve();
    r.flow += net.stats();
    const auto side = net.max_source_side();
    r.y[a].resize(inst.node_count());
    for (NodeId i = 0; i < inst.node_count(); ++i) r.y[a][i] = side[i] == Side::Source;
  }
  assemble(inst, r);
  return mp;
}

bool monotonicity_check(const KovtunRun& run, NodeId i) {
  const auto& traj = run.trajectory.at(i);
  std::vector<std::pair<int, Cost>> points;  // (inorder, c) over non-leaf path nodes
  for (int id = run.tree.node(run.leaf.at(i)).parent; id >= 0; id = run.tree.node(id).parent) {
    points.emplace_back(run.tree.node(id).inorder, traj.at(run.tree.node(id).depth));
  }
  std::sort(points.begin(), points.end());
  for (std::size_t p = 1; p < points.size(); ++p) {
    if (points[p].second < points[p - 1].second) return false;
  }
  return true;
}

}  // namespace kpotts
