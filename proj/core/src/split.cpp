#include "kpotts/split.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace kpotts {

namespace {

Cost checked_mul(Cost a, Cost b) {
  Cost out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw ScalingError("cost overflow in binary subproblem");
  return out;
}

// Binary problem sum_i u_i [i on b side] + sum w_ij [cut] as a mincut; the
// b side is the sink side.
std::vector<char> binary_mincut(NodeId n, std::span<const Cost> u, std::span<const Edge> pairs,
                                Cost pair_scale, FlowStats* stats) {
  FlowNetwork net(n);
  for (NodeId i = 0; i < n; ++i) net.update_terminal(i, u[i]);
  for (const Edge& e : pairs) {
    const Cost w = checked_mul(e.weight, pair_scale);
    if (w > 0) net.add_edge(e.i, e.j, w, w);
  }
  const CutResult cut = net.solve();
  if (stats) *stats += net.stats();
  std::vector<char> on_b(n);
  for (NodeId i = 0; i < n; ++i) on_b[i] = cut.side[i] == Side::Sink;
  return on_b;
}

// Sizes of the two sides of every tree edge; first entry is the side of
// edges()[e].a.
std::vector<std::pair<int, int>> edge_split_sizes(const WeightedLabelTree& tree) {
  const int m = tree.size();
  std::vector<int> parent(m, -1);
  std::vector<int> order;
  std::vector<char> seen(m, 0);
  order.reserve(m);
  order.push_back(0);
  seen[0] = 1;
  for (std::size_t p = 0; p < order.size(); ++p) {
    for (const auto& nb : tree.neighbors(order[p])) {
      if (!seen[nb.node]) {
        seen[nb.node] = 1;
        parent[nb.node] = order[p];
        order.push_back(nb.node);
      }
    }
  }
  std::vector<int> sub(m, 1);
  for (std::size_t p = order.size(); p-- > 1;) sub[parent[order[p]]] += sub[order[p]];
  std::vector<std::pair<int, int>> out;
  for (const TreeEdge& e : tree.edges()) {
    if (parent[e.b] == e.a) {
      out.emplace_back(m - sub[e.b], sub[e.b]);
    } else {
      out.emplace_back(sub[e.a], m - sub[e.a]);
    }
  }
  return out;
}

struct Recursion {
  SplitStats* stats;

  // Sub-problem over `nodes` and the tree spanned by `labels`. `orig` maps
  // each expanded label to a label of the parent problem; boundary pairs are
  // charged w * d(orig(label), orig(anchor)).
  SplitProblem side_problem(const SplitProblem& p, std::span<const int> labels,
                            const std::vector<int>& orig, std::span<const TreeEdge> edges,
                            int anchor, std::span<const NodeId> nodes) const {
    const int m_sub = static_cast<int>(labels.size());
    std::vector<int> local(orig.size(), -1);
    for (int l = 0; l < m_sub; ++l) local[labels[l]] = l;
    std::vector<TreeEdge> sub_edges;
    for (const TreeEdge& e : edges) {
      if (e.length > 0 && local[e.a] >= 0 && local[e.b] >= 0) {
        sub_edges.push_back({local[e.a], local[e.b], e.length});
      }
    }

    SplitProblem out;
    out.tree = WeightedLabelTree(m_sub, std::move(sub_edges));
    out.node_count = static_cast<NodeId>(nodes.size());
    std::vector<NodeId> pos(p.node_count, -1);
    for (std::size_t v = 0; v < nodes.size(); ++v) pos[nodes[v]] = static_cast<NodeId>(v);
    std::vector<Cost> boundary(nodes.size(), 0);
    for (const Edge& e : p.pairs) {
      const NodeId pi = pos[e.i];
      const NodeId pj = pos[e.j];
      if (pi >= 0 && pj >= 0) {
        out.pairs.push_back({pi, pj, e.weight});
      } else if (pi >= 0) {
        boundary[pi] += e.weight;
      } else if (pj >= 0) {
        boundary[pj] += e.weight;
      }
    }
    const int c = orig[anchor];
    out.unary.resize(nodes.size() * static_cast<std::size_t>(m_sub));
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      for (int l = 0; l < m_sub; ++l) {
        const int label = orig[labels[l]];
        out.unary[v * m_sub + l] =
            p.g(nodes[v], label) + checked_mul(boundary[v], p.tree.distance(label, c));
      }
    }
    return out;
  }

  std::vector<int> run(const SplitProblem& p, int depth) {
    if (stats) stats->max_depth = std::max(stats->max_depth, depth);
    const int m = p.tree.size();
    if (m == 1 || p.node_count == 0) return std::vector<int>(p.node_count, 0);

    const auto sizes = edge_split_sizes(p.tree);
    int best = 0;
    for (int e = 1; e < static_cast<int>(sizes.size()); ++e) {
      if (std::max(sizes[e].first, sizes[e].second) <
          std::max(sizes[best].first, sizes[best].second)) {
        best = e;
      }
    }
    const int big = std::max(sizes[best].first, sizes[best].second);
    const int small = std::min(sizes[best].first, sizes[best].second);

    std::vector<int> orig(m);
    std::iota(orig.begin(), orig.end(), 0);
    std::vector<TreeEdge> edges(p.tree.edges().begin(), p.tree.edges().end());
    std::vector<int> side_a;
    std::vector<int> side_b;
    std::vector<char> on_b;
    int a = 0;
    int b = 0;

    if (m == 2 || big <= 2 * small) {
      a = edges[best].a;
      b = edges[best].b;
      const auto y = solve_binary(p, a, b, stats ? &stats->flow : nullptr);
      on_b.resize(p.node_count);
      for (NodeId i = 0; i < p.node_count; ++i) on_b[i] = y[i] == b;
      side_a = p.tree.component(a, b);
      side_b = p.tree.component(b, a);
    } else {
      // The centroid: its largest neighbour component is smallest.
      std::vector<int> worst(m, 0);
      for (std::size_t e = 0; e < edges.size(); ++e) {
        worst[edges[e].a] = std::max(worst[edges[e].a], sizes[e].second);
        worst[edges[e].b] = std::max(worst[edges[e].b], sizes[e].first);
      }
      const int pivot = static_cast<int>(std::min_element(worst.begin(), worst.end()) - worst.begin());
      std::vector<std::pair<int, int>> comps;  // (size, neighbour)
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (edges[e].a == pivot) comps.emplace_back(sizes[e].second, edges[e].b);
        if (edges[e].b == pivot) comps.emplace_back(sizes[e].first, edges[e].a);
      }
      std::sort(comps.begin(), comps.end(),
                [](auto& x, auto& y) { return x.first != y.first ? x.first > y.first : x.second < y.second; });
      std::vector<int> near;
      std::vector<int> far;
      int near_total = 1;
      int far_total = 1;
      for (const auto& [size, nb] : comps) {
        if (near_total <= far_total) {
          near.push_back(nb);
          near_total += size;
        } else {
          far.push_back(nb);
          far_total += size;
        }
      }
      const auto ins = insert_edge(p.tree, p.unary, p.node_count, pivot, near, far,
                                   clamp_to(std::vector<Rational>(p.node_count, Rational(0))));
      if (stats) ++stats->insertions;
      const auto y = solve_binary(p, ins.record, stats ? &stats->flow : nullptr);
      on_b.resize(p.node_count);
      for (NodeId i = 0; i < p.node_count; ++i) on_b[i] = y[i] == ins.record.dummy;
      a = pivot;
      b = ins.record.dummy;
      orig.push_back(pivot);
      edges = ins.expanded_edges;
      side_a = ins.record.pivot_side;
      side_b = ins.record.dummy_side;
    }
    if (stats) ++stats->binary_solves;

    std::vector<int> x(p.node_count, 0);
    for (const auto& [labels, anchor, want_b] :
         {std::tuple{&side_a, a, false}, std::tuple{&side_b, b, true}}) {
      std::vector<NodeId> nodes;
      for (NodeId i = 0; i < p.node_count; ++i) {
        if (static_cast<bool>(on_b[i]) == want_b) nodes.push_back(i);
      }
      if (nodes.empty()) continue;
      const SplitProblem sub = side_problem(p, *labels, orig, edges, anchor, nodes);
      const auto xs = run(sub, depth + 1);
      for (std::size_t v = 0; v < nodes.size(); ++v) x[nodes[v]] = orig[(*labels)[xs[v]]];
    }
    return x;
  }
};

}  // namespace

void SplitProblem::validate() const {
  const int m = tree.size();
  if (m < 1) throw StructuralError("empty label tree");
  if (node_count < 0 || unary.size() != static_cast<std::size_t>(node_count) * m) {
    throw StructuralError("unary table size does not match node count x tree size");
  }
  for (const Edge& e : pairs) {
    if (e.i < 0 || e.j < 0 || e.i >= node_count || e.j >= node_count || e.i == e.j) {
      throw StructuralError("pair term with invalid endpoints");
    }
    if (e.weight < 0) throw StructuralError("negative pair weight");
  }
  for (NodeId i = 0; i < node_count; ++i) {
    if (const auto v = find_convexity_violation(tree, row(i))) {
      throw ConvexityError("unary of node " + std::to_string(i) + " violates tree convexity at (" +
                           std::to_string(v->a) + ", " + std::to_string(v->b) + ", " +
                           std::to_string(v->c) + ")");
    }
  }
}

Cost SplitProblem::evaluate(std::span<const int> x) const {
  if (x.size() != static_cast<std::size_t>(node_count)) {
    throw InvalidLabeling("labeling size does not match node count");
  }
  Cost total = 0;
  for (NodeId i = 0; i < node_count; ++i) {
    if (x[i] < 0 || x[i] >= tree.size()) throw InvalidLabeling("label outside the tree");
    total += g(i, x[i]);
  }
  for (const Edge& e : pairs) total += e.weight * tree.distance(x[e.i], x[e.j]);
  return total;
}

SplitProblem auxiliary_problem(const PottsInstance& inst) {
  const AuxiliaryUnary aux = build_auxiliary(inst);
  const Label k = inst.label_count();
  SplitProblem p;
  p.tree = WeightedLabelTree::star(k);
  p.node_count = inst.node_count();
  p.unary.reserve(static_cast<std::size_t>(inst.node_count()) * (k + 1));
  for (NodeId i = 0; i < inst.node_count(); ++i) {
    const auto r = aux.row(i);
    p.unary.insert(p.unary.end(), r.begin(), r.end());
  }
  p.pairs.assign(inst.edges().begin(), inst.edges().end());
  return p;
}

std::vector<int> split(const SplitProblem& problem, SplitStats* stats) {
  problem.validate();
  Recursion rec{stats};
  return rec.run(problem, 0);
}

std::vector<int> solve_binary(const SplitProblem& problem, int a, int b, FlowStats* stats) {
  const int e = problem.tree.find_edge(a, b);
  if (e < 0) throw StructuralError("binary subproblem needs a tree edge");
  std::vector<Cost> u(problem.node_count);
  for (NodeId i = 0; i < problem.node_count; ++i) u[i] = problem.g(i, b) - problem.g(i, a);
  const auto on_b = binary_mincut(problem.node_count, u, problem.pairs,
                                  problem.tree.edges()[e].length, stats);
  std::vector<int> y(problem.node_count);
  for (NodeId i = 0; i < problem.node_count; ++i) y[i] = on_b[i] ? b : a;
  return y;
}

std::vector<int> solve_binary(const SplitProblem& problem, const EdgeInsertion& record,
                              FlowStats* stats) {
  if (record.u.size() != static_cast<std::size_t>(problem.node_count)) {
    throw StructuralError("insertion record does not match the problem");
  }
  Cost scale = 1;
  for (const Rational& r : record.u) scale = checked_lcm(scale, r.den());
  std::vector<Cost> u(problem.node_count);
  for (NodeId i = 0; i < problem.node_count; ++i) {
    u[i] = checked_mul(record.u[i].num(), scale / record.u[i].den());
  }
  const auto on_b = binary_mincut(problem.node_count, u, problem.pairs, scale, stats);
  std::vector<int> y(problem.node_count);
  for (NodeId i = 0; i < problem.node_count; ++i) y[i] = on_b[i] ? record.dummy : record.pivot;
  return y;
}

Restriction restrict_problem(const SplitProblem& problem, int c, std::span<const NodeId> kept) {
  const int m = problem.tree.size();
  if (c < 0 || c >= m) throw StructuralError("fixed label outside the tree");
  Restriction out;
  out.nodes.assign(kept.begin(), kept.end());
  std::vector<NodeId> pos(problem.node_count, -1);
  for (std::size_t v = 0; v < kept.size(); ++v) {
    if (kept[v] < 0 || kept[v] >= problem.node_count || pos[kept[v]] >= 0) {
      throw StructuralError("kept nodes must be distinct valid node ids");
    }
    pos[kept[v]] = static_cast<NodeId>(v);
  }
  out.problem.tree = problem.tree;
  out.problem.node_count = static_cast<NodeId>(kept.size());
  std::vector<Cost> boundary(kept.size(), 0);
  for (const Edge& e : problem.pairs) {
    const NodeId pi = pos[e.i];
    const NodeId pj = pos[e.j];
    if (pi >= 0 && pj >= 0) {
      out.problem.pairs.push_back({pi, pj, e.weight});
    } else if (pi >= 0) {
      boundary[pi] += e.weight;
    } else if (pj >= 0) {
      boundary[pj] += e.weight;
    }
  }
  for (NodeId i = 0; i < problem.node_count; ++i) {
    if (pos[i] < 0) out.constant += problem.g(i, c);
  }
  out.problem.unary.resize(kept.size() * static_cast<std::size_t>(m));
  for (std::size_t v = 0; v < kept.size(); ++v) {
    for (int l = 0; l < m; ++l) {
      out.problem.unary[v * m + l] =
          problem.g(kept[v], l) + boundary[v] * problem.tree.distance(l, c);
    }
  }
  return out;
}

CoareaTerms coarea_check(const SplitProblem& problem, std::span<const int> x) {
  CoareaTerms out;
  out.lhs = problem.evaluate(x);
  for (NodeId i = 0; i < problem.node_count; ++i) {
    for (int a = 0; a < problem.tree.size(); ++a) {
      out.constant += (1 - problem.tree.degree(a)) * problem.g(i, a);
    }
  }
  out.rhs = out.constant;
  for (const TreeEdge& e : problem.tree.edges()) {
    out.rhs += problem.evaluate(project_to_edge(problem.tree, x, e.a, e.b));
  }
  return out;
}

std::vector<int> downarrow(std::span<const int> y_ab, std::span<const int> y_bc, int a, int b,
                           int c) {
  if (y_ab.size() != y_bc.size()) throw StructuralError("labelings differ in size");
  std::vector<int> out(y_ab.size());
  for (std::size_t i = 0; i < y_ab.size(); ++i) {
    if ((y_ab[i] != a && y_ab[i] != b) || (y_bc[i] != b && y_bc[i] != c)) {
      throw InvalidLabeling("down-arrow operand outside its edge");
    }
    out[i] = y_bc[i] == b ? y_ab[i] : b;
  }
  return out;
}

BinaryFamily project_family(const SplitProblem& problem, std::span<const int> x) {
  BinaryFamily out;
  for (const TreeEdge& e : problem.tree.edges()) {
    out.push_back(project_to_edge(problem.tree, x, e.a, e.b));
  }
  return out;
}

bool is_consistent(const SplitProblem& problem, const BinaryFamily& family) {
  const auto edges = problem.tree.edges();
  if (family.size() != edges.size()) throw StructuralError("family needs one labeling per edge");
  for (NodeId i = 0; i < problem.node_count; ++i) {
    // Each tree node may have at most one incident edge pointing away from it.
    std::vector<int> outgoing(problem.tree.size(), 0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const int v = family[e].at(i);
      if (v == edges[e].a) {
        ++outgoing[edges[e].b];
      } else if (v == edges[e].b) {
        ++outgoing[edges[e].a];
      } else {
        throw InvalidLabeling("family entry outside its edge");
      }
    }
    if (std::any_of(outgoing.begin(), outgoing.end(), [](int d) { return d > 1; })) return false;
  }
  return true;
}

BinaryFamily consistent_family(const SplitProblem& problem, FlowStats* stats) {
  const auto edges = problem.tree.edges();
  BinaryFamily family(edges.size());
  if (edges.empty()) return family;
  std::vector<char> in_tree(problem.tree.size(), 0);
  std::vector<char> done(edges.size(), 0);
  family[0] = solve_binary(problem, edges[0].a, edges[0].b, stats);
  in_tree[edges[0].a] = in_tree[edges[0].b] = 1;
  done[0] = 1;
  for (std::size_t added = 1; added < edges.size(); ++added) {
    std::size_t e = 0;
    while (done[e] || in_tree[edges[e].a] == in_tree[edges[e].b]) ++e;
    const int b = in_tree[edges[e].a] ? edges[e].a : edges[e].b;
    const int a = edges[e].a == b ? edges[e].b : edges[e].a;
    auto y = solve_binary(problem, a, b, stats);
    for (const auto& nb : problem.tree.neighbors(b)) {
      if (nb.node != a && done[nb.edge]) y = downarrow(y, family[nb.edge], a, b, nb.node);
    }
    family[e] = std::move(y);
    done[e] = 1;
    in_tree[a] = 1;
  }
  return family;
}

std::vector<int> labeling_from_family(const SplitProblem& problem, const BinaryFamily& family) {
  if (!is_consistent(problem, family)) throw StructuralError("binary family is not consistent");
  std::vector<int> x(problem.node_count);
  for (NodeId i = 0; i < problem.node_count; ++i) {
    int cur = 0;
    for (bool moved = true; moved;) {
      moved = false;
      for (const auto& nb : problem.tree.neighbors(cur)) {
        if (family[nb.edge][i] == nb.node) {
          cur = nb.node;
          moved = true;
          break;
        }
      }
    }
    x[i] = cur;
  }
  return x;
}

}  // namespace kpotts
