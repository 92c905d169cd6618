#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kpotts/instance_io.hpp"
#include "kpotts/maxflow.hpp"

namespace kpotts {

/// Names accepted by run_method.
const std::vector<std::string>& method_names();

struct MethodOutcome {
  /// Partial labeling for the persistency methods, full labeling otherwise.
  std::vector<Label> x;
  /// A full labeling when the method produces one (the Kovtun labeling for
  /// fast-kovtun, the final labeling for expansion and full-pipeline).
  std::optional<std::vector<Label>> full;
  std::optional<Cost> energy;  // energy of `full`
  int maxflow_phases = 0;      // maxflow computations (moves for expansion)
  FlowStats flow;
  double wall_ms = 0;
};

/// Runs one of naive-kovtun, fast-kovtun, ksub-relax, expansion, full-pipeline.
/// `maximize` switches the Kovtun methods to maximal persistent sets.
/// Throws std::invalid_argument for an unknown method.
MethodOutcome run_method(const PottsInstance& inst, const std::string& method,
                         bool maximize = false);

struct BenchConfig {
  /// "stereo" or "random" (random grids).
  std::string generator = "stereo";
  std::vector<std::uint64_t> seeds;
  std::vector<GridShape> sizes;
  std::vector<Label> labels;
  std::vector<Cost> lambdas;
  std::vector<std::string> methods;
  double noise = 4.0;
  int window = 1;
  /// When non-zero, stereo instances are generated with this many
  /// disparities and subsampled to each entry of `labels`.
  Label subsample_from = 0;
  int threads = 1;
};

/// Parses a JSON object with the fields of BenchConfig (sizes as [w, h]
/// pairs). Missing fields keep their defaults; empty lists produce no cells.
/// Throws FormatError on malformed input.
BenchConfig parse_bench_config(const std::string& json_text);

struct BenchRecord {
  std::string instance;
  std::string method;
  NodeId nodes = 0;
  Label labels = 0;
  double labeled_fraction = 0;
  int maxflow_phases = 0;
  std::int64_t augmentations = 0;
  std::int64_t arc_scans = 0;
  std::int64_t work = 0;
  double wall_ms = 0;
  std::optional<Cost> energy;
  std::optional<double> error_rate;
};

BenchRecord make_record(const std::string& instance, const std::string& method,
                        const PottsInstance& inst, const MethodOutcome& outcome,
                        const std::vector<Label>* truth);

/// One record per (seed, size, k, lambda, method) cell, in that nesting
/// order regardless of the thread count.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

inline constexpr const char* kCsvHeader =
    "instance,method,nodes,labels,labeled_fraction,maxflow_phases,augmentations,arc_scans,"
    "work,wall_ms,energy,error_rate";

void write_csv_row(std::ostream& out, const BenchRecord& r);
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace kpotts
