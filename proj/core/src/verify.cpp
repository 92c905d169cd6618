#include "kpotts/verify.hpp"

#include <sstream>

#include "kpotts/kovtun.hpp"
#include "kpotts/ksubmodular.hpp"

namespace kpotts {

bool VerifyReport::ok() const {
  for (const auto& item : items) {
    if (!item.passed) return false;
  }
  return true;
}

void VerifyReport::add(std::string name, bool passed, std::string detail) {
  items.push_back({std::move(name), passed, std::move(detail)});
}

int expected_phases(Label k) {
  // 1 + ceil(log2 k), which equals ceil(1 + log2 k).
  int levels = 1;
  for (std::int64_t span = 1; span < k; span *= 2) ++levels;
  return levels;
}

VerifyReport verify_instance(const PottsInstance& inst, const VerifyOptions& options) {
  VerifyReport report;
  const Label k = inst.label_count();
  const auto run = fast_kovtun(inst);
  const auto naive = naive_kovtun(inst);

  report.add("fast-equals-naive", run.result.x == naive.x,
             run.result.x == naive.x ? "" : "partial labelings differ");
  report.add("binary-values", run.result.binary_values == naive.binary_values,
             run.result.binary_values == naive.binary_values ? ""
                                                             : "f^a minima differ from fresh cuts");
  {
    std::ostringstream detail;
    detail << run.result.maxflow_phases << " phases for k = " << k;
    report.add("phase-count", k < 2 || run.result.maxflow_phases == expected_phases(k),
               detail.str());
  }

  if (k >= 2) {
    std::ostringstream bad;
    for (Label a = 0; a < k; ++a) {
      const auto check = verify_label_flow(inst, a, extract_label_flow(run, inst, a));
      if (!check.ok() || check.value != naive.binary_values[a]) {
        bad << "label " << a << ": "
            << (check.ok() ? "value " + std::to_string(check.value) : check.violation) << "; ";
      }
    }
    report.add("flow-extraction", bad.str().empty(), bad.str());
  }

  if (enumeration_size(inst.node_count(), k + 1, options.enumeration_limit) < 0) {
    report.add("brute-force", true, "skipped: instance too large to enumerate");
    return report;
  }
  const auto minimum = brute_force_potts(inst, options.enumeration_limit);
  report.add("partial-optimality", agrees_with_some_minimizer(minimum, run.result.x),
             "minimum energy " + std::to_string(minimum.value));
  if (k >= 2) {
    // The relaxation needs even costs; doubling keeps every minimizer.
    const auto doubled = scale_costs(inst, 2);
    const auto relaxed = minimize_relaxation(build_relaxation(doubled));
    report.add("relaxation-persistency",
               agrees_with_some_minimizer(minimum, persistency_from_relaxation(relaxed)));
  }
  return report;
}

}  // namespace kpotts
