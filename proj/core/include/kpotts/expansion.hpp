#pragma once

#include <span>
#include <vector>

#include "kpotts/kovtun.hpp"
#include "kpotts/maxflow.hpp"
#include "kpotts/potts.hpp"

namespace kpotts {

struct ExpansionStats {
  /// Full label sweeps, including the final one without accepted moves.
  int sweeps = 0;
  int moves = 0;
  int accepted = 0;
  /// Energy after each sweep.
  std::vector<Cost> sweep_energies;
  FlowStats flow;
};

/// One alpha-expansion move towards label a over the nodes with frozen[i] == 0:
/// every such node either keeps its label or switches to a, whichever pair
/// of choices minimizes the energy (one mincut). The move is kept only if the
/// energy strictly decreases. Returns the energy change (<= 0).
Cost expand_once(const PottsInstance& inst, std::vector<Label>& x,
                 std::span<const char> frozen, Label a, ExpansionStats* stats = nullptr);

struct ExpansionResult {
  std::vector<Label> x;
  Cost energy = 0;
  ExpansionStats stats;
};

/// Sweeps a = 0..k-1 until a sweep accepts no move. `frozen` may be empty
/// (nothing frozen). Throws InvalidLabeling when init is not a full labeling.
ExpansionResult run_to_convergence(const PottsInstance& inst, std::vector<Label> init,
                                   std::span<const char> frozen);

/// Expansion from the per-node unary argmin with nothing frozen.
ExpansionResult expansion_only(const PottsInstance& inst);

struct PipelineResult {
  PersistencyResult persistency;
  ExpansionResult expansion;
};

/// Phase 1: fast Kovtun (with maximized persistency when `maximize` is set).
/// Phase 2: expansion from the Kovtun labeling with persistent nodes frozen.
PipelineResult full_pipeline(const PottsInstance& inst, bool maximize = false);

}  // namespace kpotts
