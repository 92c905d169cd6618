#include "kpotts/expansion.hpp"

#include <string>

namespace kpotts {

Cost expand_once(const PottsInstance& inst, std::vector<Label>& x, std::span<const char> frozen,
                 Label a, ExpansionStats* stats) {
  const NodeId n = inst.node_count();
  // Binary variable per node that may still move: source side switches to a.
  std::vector<NodeId> var(n, -1);
  NodeId count = 0;
  for (NodeId i = 0; i < n; ++i) {
    const bool fixed = !frozen.empty() && frozen[i];
    if (!fixed && x[i] != a) var[i] = count++;
  }
  if (stats) ++stats->moves;
  if (count == 0) return 0;

  FlowNetwork net(count);
  std::vector<Cost> u(count, 0);  // cost(keep) - cost(a)
  for (NodeId i = 0; i < n; ++i) {
    if (var[i] >= 0) u[var[i]] += inst.unary(i, x[i]) - inst.unary(i, a);
  }
  for (const Edge& e : inst.edges()) {
    const NodeId p = var[e.i];
    const NodeId q = var[e.j];
    if (p < 0 && q < 0) continue;
    if (p < 0 || q < 0) {
      // One side moves against a fixed label c.
      const NodeId i = p < 0 ? e.j : e.i;
      const Label c = x[p < 0 ? e.i : e.j];
      const Cost keep = x[i] != c ? e.weight : 0;
      const Cost to_a = a != c ? e.weight : 0;
      u[var[i]] += keep - to_a;
      continue;
    }
    // V(a,a) = 0, V(a,keep) = V(keep,a) = w, V(keep,keep) = w [x_i != x_j].
    const Cost vss = 0;
    const Cost vst = e.weight;
    const Cost vts = e.weight;
    const Cost vtt = x[e.i] != x[e.j] ? e.weight : 0;
    u[p] += vts - vss;
    u[q] += vtt - vts;
    net.add_edge(p, q, vst + vts - vss - vtt, 0);
  }
  for (NodeId v = 0; v < count; ++v) net.update_terminal(v, u[v]);
  const auto cut = net.solve();
  if (stats) stats->flow += net.stats();

  const Cost before = energy(inst, x);
  std::vector<Label> candidate = x;
  for (NodeId i = 0; i < n; ++i) {
    if (var[i] >= 0 && cut.side[var[i]] == Side::Source) candidate[i] = a;
  }
  const Cost after = energy(inst, candidate);
  if (after >= before) return 0;
  x = std::move(candidate);
  if (stats) ++stats->accepted;
  return after - before;
}

ExpansionResult run_to_convergence(const PottsInstance& inst, std::vector<Label> init,
                                   std::span<const char> frozen) {
  if (init.size() != static_cast<std::size_t>(inst.node_count())) {
    throw InvalidLabeling("initial labeling has the wrong length");
  }
  for (Label v : init) {
    if (v < 0 || v >= inst.label_count()) {
      throw InvalidLabeling("initial labeling entry " + std::to_string(v) + " is not a label");
    }
  }
  if (!frozen.empty() && frozen.size() != init.size()) {
    throw InvalidLabeling("frozen mask has the wrong length");
  }
  ExpansionResult r;
  r.x = std::move(init);
  r.energy = energy(inst, r.x);
  for (bool changed = true; changed;) {
    changed = false;
    for (Label a = 0; a < inst.label_count(); ++a) {
      const Cost delta = expand_once(inst, r.x, frozen, a, &r.stats);
      if (delta < 0) {
        r.energy += delta;
        changed = true;
      }
    }
    ++r.stats.sweeps;
    r.stats.sweep_energies.push_back(r.energy);
  }
  return r;
}

ExpansionResult expansion_only(const PottsInstance& inst) {
  return run_to_convergence(inst, unary_argmin(inst), {});
}

PipelineResult full_pipeline(const PottsInstance& inst, bool maximize) {
  PipelineResult out;
  const auto run = fast_kovtun(inst);
  out.persistency = maximize ? maximize_persistency(run, inst).result : run.result;
  const auto& x = out.persistency.x;
  std::vector<Label> init = out.persistency.kovtun_labeling;
  if (init.size() != x.size()) init = unary_argmin(inst);
  std::vector<char> frozen(x.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (is_labeled(x[i])) {
      init[i] = x[i];
      frozen[i] = 1;
    }
  }
  out.expansion = run_to_convergence(inst, std::move(init), frozen);
  return out;
}

}  // namespace kpotts
