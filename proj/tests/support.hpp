// Random problem generators for the tests. Generated data is certified with
// the oracles before use.
#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "kpotts/potts.hpp"
#include "kpotts/split.hpp"
#include "oracles.hpp"

namespace support {

using kpotts::Cost;

inline Cost uniform(std::mt19937_64& rng, Cost lo, Cost hi) {
  return std::uniform_int_distribution<Cost>(lo, hi)(rng);
}

// Random labeled tree: node v attaches to a random earlier node, then the
// labels are shuffled.
inline std::vector<kpotts::TreeEdge> random_tree(std::mt19937_64& rng, int m, Cost max_len) {
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<kpotts::TreeEdge> edges;
  for (int v = 1; v < m; ++v) {
    const int p = static_cast<int>(uniform(rng, 0, v - 1));
    edges.push_back({perm[v], perm[p], uniform(rng, 1, max_len)});
  }
  return edges;
}

inline std::vector<std::array<Cost, 3>> as_arrays(const std::vector<kpotts::TreeEdge>& edges) {
  std::vector<std::array<Cost, 3>> out;
  for (const auto& e : edges) out.push_back({e.a, e.b, e.length});
  return out;
}

// Random values pushed down onto their largest tree-convex minorant.
inline std::vector<Cost> random_convex_row(std::mt19937_64& rng,
                                           const std::vector<std::vector<Cost>>& dist,
                                           const std::vector<std::array<Cost, 3>>& edges,
                                           Cost range) {
  const int m = static_cast<int>(dist.size());
  std::vector<Cost> g(m);
  // A mix of distance cones and noise keeps the rows from collapsing to constants.
  const int anchor = static_cast<int>(uniform(rng, 0, m - 1));
  const Cost slope = uniform(rng, 0, 3);
  for (int c = 0; c < m; ++c) g[c] = uniform(rng, -range, range) + slope * dist[anchor][c];
  for (bool changed = true; changed;) {
    changed = false;
    for (int b = 0; b < m; ++b) {
      for (const auto& e1 : edges) {
        for (const auto& e2 : edges) {
          if (&e1 == &e2) continue;
          const int a = e1[0] == b ? static_cast<int>(e1[1]) : e1[1] == b ? static_cast<int>(e1[0]) : -1;
          const int c = e2[0] == b ? static_cast<int>(e2[1]) : e2[1] == b ? static_cast<int>(e2[0]) : -1;
          if (a < 0 || c < 0) continue;
          const Cost num = dist[b][c] * g[a] + dist[a][b] * g[c];
          const Cost den = dist[a][c];
          if (den * g[b] > num) {
            // floor division
            Cost q = num / den;
            if (num % den != 0 && num < 0) --q;
            g[b] = q;
            changed = true;
          }
        }
      }
    }
  }
  if (!oracle::tree_convex(dist, edges, g)) throw std::logic_error("generator left a non-convex row");
  return g;
}

struct TreeProblem {
  kpotts::SplitProblem problem;
  oracle::Labeling labeling;
};

inline TreeProblem random_tree_problem(std::mt19937_64& rng, int n, int m, Cost range,
                                       Cost max_weight, double density = 0.5) {
  const auto tedges = random_tree(rng, m, 3);
  const auto arr = as_arrays(tedges);
  const auto dist = oracle::tree_distances(m, arr);
  TreeProblem out;
  out.problem.tree = kpotts::WeightedLabelTree(m, tedges);
  out.problem.node_count = n;
  out.labeling.n = n;
  out.labeling.m = m;
  out.labeling.dist = dist;
  for (int i = 0; i < n; ++i) {
    const auto row = random_convex_row(rng, dist, arr, range);
    out.problem.unary.insert(out.problem.unary.end(), row.begin(), row.end());
    out.labeling.un.push_back(row);
  }
  std::bernoulli_distribution keep(density);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!keep(rng)) continue;
      const Cost w = uniform(rng, 0, max_weight);
      out.problem.pairs.push_back({i, j, w});
      out.labeling.pairs.push_back({i, j, w});
    }
  }
  return out;
}

struct RandomPotts {
  kpotts::PottsInstance inst;
  std::vector<Cost> unary;
  std::vector<oracle::PairTerm> edges;
};

inline RandomPotts make_potts(int n, int k, std::vector<Cost> unary,
                              std::vector<oracle::PairTerm> edges) {
  std::vector<kpotts::Edge> ke;
  for (const auto& e : edges) ke.push_back({e.i, e.j, e.w});
  RandomPotts r{kpotts::PottsInstance(n, k, unary, ke), std::move(unary), std::move(edges)};
  return r;
}

// 4-connected w x h grid with random unaries in [0, cost_hi] and weights in
// [0, lambda_hi].
inline RandomPotts random_grid(std::mt19937_64& rng, int w, int h, int k, Cost cost_hi,
                               Cost lambda_hi) {
  std::vector<Cost> unary;
  for (int i = 0; i < w * h * k; ++i) unary.push_back(uniform(rng, 0, cost_hi));
  std::vector<oracle::PairTerm> edges;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int i = y * w + x;
      if (x + 1 < w) edges.push_back({i, i + 1, uniform(rng, 0, lambda_hi)});
      if (y + 1 < h) edges.push_back({i, i + w, uniform(rng, 0, lambda_hi)});
    }
  }
  return make_potts(w * h, k, std::move(unary), std::move(edges));
}

// Random sparse graph on n nodes.
inline RandomPotts random_sparse(std::mt19937_64& rng, int n, int k, Cost cost_hi,
                                 Cost lambda_hi, double density) {
  std::vector<Cost> unary;
  for (int i = 0; i < n * k; ++i) unary.push_back(uniform(rng, 0, cost_hi));
  std::vector<oracle::PairTerm> edges;
  std::bernoulli_distribution keep(density);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (keep(rng)) edges.push_back({i, j, uniform(rng, 0, lambda_hi)});
    }
  }
  return make_potts(n, k, std::move(unary), std::move(edges));
}

// Coarse costs scaled by 2^16 plus i.i.d. noise in [0, 2^8).
inline RandomPotts perturb(std::mt19937_64& rng, const RandomPotts& base) {
  auto unary = base.unary;
  for (Cost& v : unary) v = v * 65536 + uniform(rng, 0, 255);
  auto edges = base.edges;
  for (auto& e : edges) e.w = e.w * 65536 + uniform(rng, 0, 255);
  return make_potts(base.inst.node_count(), base.inst.label_count(), std::move(unary),
                    std::move(edges));
}

}  // namespace support
