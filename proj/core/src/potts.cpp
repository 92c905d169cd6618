#include "kpotts/potts.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <utility>

namespace kpotts {

PottsInstance::PottsInstance(NodeId node_count, Label label_count,
                             std::vector<Cost> unary, std::vector<Edge> edges)
    : node_count_(node_count), label_count_(label_count), unary_(std::move(unary)) {
  if (node_count < 0) throw InvalidInstance("negative node count");
  if (label_count < 1) throw InvalidInstance("label count must be at least 1");
  if (unary_.size() != static_cast<std::size_t>(node_count) * label_count) {
    throw InvalidInstance("unary table has " + std::to_string(unary_.size()) +
                          " entries, expected " +
                          std::to_string(static_cast<std::size_t>(node_count) * label_count));
  }

  std::map<std::pair<NodeId, NodeId>, std::size_t> seen;
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= node_count || e.j >= node_count) {
      throw InvalidInstance("edge references node outside [0, " +
                            std::to_string(node_count) + ")");
    }
    if (e.i == e.j) throw InvalidInstance("self-loop at node " + std::to_string(e.i));
    if (e.weight < 0) throw InvalidInstance("negative edge weight");
    const auto key = std::minmax(e.i, e.j);
    auto [it, inserted] = seen.emplace(key, edges_.size());
    if (inserted) {
      edges_.push_back({key.first, key.second, e.weight});
    } else {
      edges_[it->second].weight += e.weight;
    }
  }
}

PottsInstance scale_costs(const PottsInstance& inst, Cost factor) {
  if (factor <= 0) throw ScalingError("scale factor must be positive");
  auto mul = [factor](Cost v) {
    Cost out = 0;
    if (__builtin_mul_overflow(v, factor, &out)) throw ScalingError("cost overflow while scaling");
    return out;
  };
  std::vector<Cost> unary(inst.unary_table().begin(), inst.unary_table().end());
  for (Cost& v : unary) v = mul(v);
  std::vector<Edge> edges(inst.edges().begin(), inst.edges().end());
  for (Edge& e : edges) e.weight = mul(e.weight);
  return PottsInstance(inst.node_count(), inst.label_count(), std::move(unary), std::move(edges));
}

Cost energy(const PottsInstance& inst, std::span<const Label> x) {
  if (x.size() != static_cast<std::size_t>(inst.node_count())) {
    throw InvalidLabeling("labeling size does not match node count");
  }
  Cost total = 0;
  for (NodeId i = 0; i < inst.node_count(); ++i) {
    if (x[i] < 0 || x[i] >= inst.label_count()) {
      throw InvalidLabeling("node " + std::to_string(i) + " has label " +
                            std::to_string(x[i]) + " outside L");
    }
    total += inst.unary(i, x[i]);
  }
  for (const Edge& e : inst.edges()) {
    if (x[e.i] != x[e.j]) total += e.weight;
  }
  return total;
}

Cost min_excluding(std::span<const Cost> row, Label a) {
  Cost best = std::numeric_limits<Cost>::max();
  for (std::size_t b = 0; b < row.size(); ++b) {
    if (static_cast<Label>(b) != a) best = std::min(best, row[b]);
  }
  return best;
}

std::vector<Label> unary_argmin(const PottsInstance& inst) {
  std::vector<Label> x(inst.node_count());
  for (NodeId i = 0; i < inst.node_count(); ++i) {
    auto row = inst.unary_row(i);
    x[i] = static_cast<Label>(std::min_element(row.begin(), row.end()) - row.begin());
  }
  return x;
}

AuxiliaryUnary::AuxiliaryUnary(NodeId node_count, Label label_count, std::vector<Cost> table)
    : node_count_(node_count), label_count_(label_count), table_(std::move(table)) {
  if (table_.size() != static_cast<std::size_t>(node_count) * (label_count + 1)) {
    throw InvalidInstance("auxiliary table size mismatch");
  }
}

AuxiliaryUnary build_auxiliary(const PottsInstance& inst) {
  const Label k = inst.label_count();
  if (k < 2) throw DegenerateInstance("auxiliary function needs at least two labels");
  std::vector<Cost> table;
  table.reserve(static_cast<std::size_t>(inst.node_count()) * (k + 1));
  for (NodeId i = 0; i < inst.node_count(); ++i) {
    auto row = inst.unary_row(i);
    // Only the two smallest values matter for min_{b != a}.
    Label first = 0;
    for (Label a = 1; a < k; ++a) {
      if (row[a] < row[first]) first = a;
    }
    const Cost second = min_excluding(row, first);
    for (Label a = 0; a < k; ++a) {
      table.push_back(row[a] - (a == first ? second : row[first]));
    }
    table.push_back(0);
  }
  return AuxiliaryUnary(inst.node_count(), k, std::move(table));
}

Cost auxiliary_energy(const PottsInstance& inst, const AuxiliaryUnary& aux,
                      std::span<const Label> x) {
  if (x.size() != static_cast<std::size_t>(inst.node_count())) {
    throw InvalidLabeling("labeling size does not match node count");
  }
  Cost total = 0;
  for (NodeId i = 0; i < inst.node_count(); ++i) {
    if (x[i] < kOutside || x[i] >= inst.label_count()) {
      throw InvalidLabeling("node " + std::to_string(i) + " has label outside D");
    }
    total += aux.value(i, x[i]);
  }
  for (const Edge& e : inst.edges()) total += e.weight * star_distance(x[e.i], x[e.j]);
  return total;
}

Cost eval_fa(const PottsInstance& inst, Label a, std::span<const Label> y) {
  if (a < 0 || a >= inst.label_count()) throw InvalidLabeling("label outside L");
  if (inst.label_count() < 2) throw DegenerateInstance("f^a needs at least two labels");
  if (y.size() != static_cast<std::size_t>(inst.node_count())) {
    throw InvalidLabeling("labeling size does not match node count");
  }
  Cost total = 0;
  for (NodeId i = 0; i < inst.node_count(); ++i) {
    if (y[i] == a) {
      total += inst.unary(i, a);
    } else if (y[i] == kOutside) {
      total += min_excluding(inst.unary_row(i), a);
    } else {
      throw InvalidLabeling("binary labeling entry must be a or kOutside");
    }
  }
  for (const Edge& e : inst.edges()) {
    if (y[e.i] != y[e.j]) total += e.weight;
  }
  return total;
}

std::vector<Label> apply_persistent_label(std::span<const Label> x, std::span<const Label> y,
                                          Label a) {
  if (x.size() != y.size()) throw InvalidLabeling("labeling size mismatch");
  std::vector<Label> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (y[i] == a) out[i] = a;
  }
  return out;
}

std::vector<Label> constant_labeling(NodeId n, Label a) {
  return std::vector<Label>(static_cast<std::size_t>(n), a);
}

double labeled_fraction(std::span<const Label> x) {
  if (x.empty()) return 1.0;
  const auto labeled = std::count_if(x.begin(), x.end(), is_labeled);
  return static_cast<double>(labeled) / static_cast<double>(x.size());
}

}  // namespace kpotts
