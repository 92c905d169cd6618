#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kpotts/potts.hpp"

namespace kpotts {

/// Largest number of labelings the exhaustive routines will visit.
inline constexpr std::int64_t kDefaultEnumerationLimit = std::int64_t{1} << 22;

/// Number of labelings in alphabet^n, or -1 when it exceeds `limit`.
std::int64_t enumeration_size(NodeId n, int alphabet, std::int64_t limit);

/// Calls visit(x) for every x in L^V (include_outside = false) or D^V
/// (include_outside = true, o rendered as kOutside), in lexicographic order
/// with node 0 as the most significant digit. Throws CapacityError past `limit`.
void for_each_labeling(NodeId n, Label k, bool include_outside,
                       const std::function<void(std::span<const Label>)>& visit,
                       std::int64_t limit = kDefaultEnumerationLimit);

struct ExhaustiveMinimum {
  Cost value = 0;
  /// Lexicographically first minimizer.
  std::vector<Label> argmin;
  std::int64_t minimizer_count = 0;
  /// Every minimizer, in enumeration order.
  std::vector<std::vector<Label>> minimizers;
};

/// Exhaustive minimum of an arbitrary function over L^V or D^V.
ExhaustiveMinimum minimize_exhaustively(NodeId n, Label k, bool include_outside,
                                        const std::function<Cost(std::span<const Label>)>& fn,
                                        std::int64_t limit = kDefaultEnumerationLimit);

/// Exhaustive minimum of the Potts energy.
ExhaustiveMinimum brute_force_potts(const PottsInstance& inst,
                                    std::int64_t limit = kDefaultEnumerationLimit);

/// True iff some listed minimizer equals `partial` on every labeled entry.
bool agrees_with_some_minimizer(const ExhaustiveMinimum& minimum, std::span<const Label> partial);

}  // namespace kpotts
