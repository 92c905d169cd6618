#include "kpotts/brute_force.hpp"

#include <limits>
#include <string>

namespace kpotts {

std::int64_t enumeration_size(NodeId n, int alphabet, std::int64_t limit) {
  std::int64_t total = 1;
  for (NodeId i = 0; i < n; ++i) {
    if (total > limit / alphabet) return -1;
    total *= alphabet;
  }
  return total <= limit ? total : -1;
}

void for_each_labeling(NodeId n, Label k, bool include_outside,
                       const std::function<void(std::span<const Label>)>& visit,
                       std::int64_t limit) {
  const int alphabet = k + (include_outside ? 1 : 0);
  if (alphabet <= 0) throw DegenerateInstance("empty label set");
  if (enumeration_size(n, alphabet, limit) < 0) {
    throw CapacityError(std::to_string(alphabet) + "^" + std::to_string(n) +
                        " labelings exceed the enumeration limit");
  }
  // Digit k stands for o.
  std::vector<int> digit(n, 0);
  std::vector<Label> x(n, 0);
  auto render = [&](NodeId i) { x[i] = digit[i] == k ? kOutside : digit[i]; };
  for (NodeId i = 0; i < n; ++i) render(i);
  while (true) {
    visit(x);
    NodeId i = n - 1;
    while (i >= 0 && digit[i] == alphabet - 1) {
      digit[i] = 0;
      render(i);
      --i;
    }
    if (i < 0) return;
    ++digit[i];
    render(i);
  }
}

ExhaustiveMinimum minimize_exhaustively(NodeId n, Label k, bool include_outside,
                                        const std::function<Cost(std::span<const Label>)>& fn,
                                        std::int64_t limit) {
  ExhaustiveMinimum m;
  m.value = std::numeric_limits<Cost>::max();
  for_each_labeling(
      n, k, include_outside,
      [&](std::span<const Label> x) {
        const Cost v = fn(x);
        if (v < m.value) {
          m.value = v;
          m.minimizers.clear();
        }
        if (v == m.value) m.minimizers.emplace_back(x.begin(), x.end());
      },
      limit);
  m.minimizer_count = static_cast<std::int64_t>(m.minimizers.size());
  m.argmin = m.minimizers.front();
  return m;
}

ExhaustiveMinimum brute_force_potts(const PottsInstance& inst, std::int64_t limit) {
  return minimize_exhaustively(
      inst.node_count(), inst.label_count(), false,
      [&](std::span<const Label> x) { return energy(inst, x); }, limit);
}

bool agrees_with_some_minimizer(const ExhaustiveMinimum& minimum, std::span<const Label> partial) {
  for (const auto& x : minimum.minimizers) {
    bool ok = x.size() == partial.size();
    for (std::size_t i = 0; ok && i < x.size(); ++i) {
      if (is_labeled(partial[i]) && partial[i] != x[i]) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace kpotts
