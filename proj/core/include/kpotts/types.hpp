#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kpotts {

/// Exact integer cost. All energies, capacities and unary tables use it.
using Cost = std::int64_t;

/// Index of a label in L = {0, ..., k-1}.
using Label = std::int32_t;

/// Index of a graph node in V = {0, ..., n-1}.
using NodeId = std::int32_t;

/// The distinguished "unlabeled" element o of D = L u {o}.
inline constexpr Label kOutside = -1;

inline bool is_labeled(Label x) { return x != kOutside; }

// Error hierarchy. Everything derives from std::runtime_error or
// std::invalid_argument so callers may catch broadly.

struct InvalidInstance : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidLabeling : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Operation undefined for the given label count (e.g. k = 1 where a-bar is empty).
struct DegenerateInstance : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Graph or tree structure misuse (missing edge, disconnected tree, ...).
struct StructuralError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A unary table failed the tree-convexity certificate.
struct ConvexityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Costs cannot be represented exactly at the requested scale.
struct ScalingError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Exhaustive procedure asked to enumerate a domain that is too large.
struct CapacityError : std::length_error {
  using std::length_error::length_error;
};

/// Malformed instance / labeling / config file.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace kpotts
