#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kpotts/brute_force.hpp"
#include "kpotts/potts.hpp"

namespace kpotts {

struct VerifyItem {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyItem> items;

  bool ok() const;
  void add(std::string name, bool passed, std::string detail = {});
};

struct VerifyOptions {
  /// Brute-force checks run only when the labelings fit within this limit.
  std::int64_t enumeration_limit = std::int64_t{1} << 20;
};

/// Runs every applicable oracle on an instance:
///  - fast and naive Kovtun give the same partial labeling and binary values;
///  - the phase count is ceil(1 + log2 k);
///  - every extracted per-label flow is a maximum flow of f^a;
///  - persistent labels agree with some global minimizer (brute force);
///  - the relaxation's labels agree with some global minimizer (brute force).
VerifyReport verify_instance(const PottsInstance& inst, const VerifyOptions& options = {});

/// ceil(1 + log2 k) for k >= 1.
int expected_phases(Label k);

}  // namespace kpotts
