#include "kpotts/bench.hpp"

#include <atomic>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "kpotts/expansion.hpp"
#include "kpotts/generators.hpp"
#include "kpotts/kovtun.hpp"
#include "kpotts/ksubmodular.hpp"

namespace kpotts {

const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names{"naive-kovtun", "fast-kovtun", "ksub-relax",
                                              "expansion", "full-pipeline"};
  return names;
}

MethodOutcome run_method(const PottsInstance& inst, const std::string& method, bool maximize) {
  MethodOutcome out;
  const auto start = std::chrono::steady_clock::now();
  if (method == "naive-kovtun") {
    auto r = naive_kovtun(inst);
    if (maximize && inst.label_count() >= 2) {
      // Largest minimizing a-set per label from a fresh solve.
      for (Label a = 0; a < inst.label_count(); ++a) {
        auto net = label_network(inst, a);
        net.solve();
        out.flow += net.stats();
        const auto side = net.max_source_side();
        for (NodeId i = 0; i < inst.node_count(); ++i) {
          if (side[i] == Side::Source) r.x[i] = a;
        }
      }
    }
    out.x = std::move(r.x);
    out.maxflow_phases = r.maxflow_phases;
    out.flow += r.flow;
  } else if (method == "fast-kovtun") {
    const auto run = fast_kovtun(inst);
    auto r = maximize ? maximize_persistency(run, inst).result : run.result;
    out.x = std::move(r.x);
    out.full = r.kovtun_labeling;
    out.maxflow_phases = r.maxflow_phases;
    out.flow = r.flow;
  } else if (method == "ksub-relax") {
    if (inst.label_count() < 2) {
      out.x = constant_labeling(inst.node_count(), 0);
    } else {
      SplitStats stats;
      out.x = minimize_relaxation(build_relaxation(scale_costs(inst, 2)), &stats);
      out.maxflow_phases = stats.binary_solves;
      out.flow = stats.flow;
    }
  } else if (method == "expansion") {
    auto r = expansion_only(inst);
    out.x = r.x;
    out.full = std::move(r.x);
    out.maxflow_phases = r.stats.moves;
    out.flow = r.stats.flow;
  } else if (method == "full-pipeline") {
    auto r = full_pipeline(inst, maximize);
    out.x = r.expansion.x;
    out.full = std::move(r.expansion.x);
    out.maxflow_phases = r.persistency.maxflow_phases + r.expansion.stats.moves;
    out.flow = r.persistency.flow;
    out.flow += r.expansion.stats.flow;
  } else {
    throw std::invalid_argument("unknown method '" + method + "'");
  }
  out.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (out.full) out.energy = energy(inst, *out.full);
  return out;
}

BenchConfig parse_bench_config(const std::string& json_text) {
  BenchConfig c;
  try {
    const auto j = nlohmann::json::parse(json_text);
    if (!j.is_object()) throw FormatError("bench config must be a JSON object");
    c.generator = j.value("generator", c.generator);
    c.seeds = j.value("seeds", c.seeds);
    c.labels = j.value("labels", c.labels);
    c.lambdas = j.value("lambdas", c.lambdas);
    c.methods = j.value("methods", c.methods);
    c.noise = j.value("noise", c.noise);
    c.window = j.value("window", c.window);
    c.subsample_from = j.value("subsample_from", c.subsample_from);
    c.threads = j.value("threads", c.threads);
    if (j.contains("sizes")) {
      for (const auto& s : j.at("sizes")) {
        if (!s.is_array() || s.size() != 2) throw FormatError("sizes entries must be [w, h]");
        c.sizes.push_back({s[0].get<int>(), s[1].get<int>()});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bench config: ") + e.what());
  }
  if (c.generator != "stereo" && c.generator != "random") {
    throw FormatError("bench config: unknown generator '" + c.generator + "'");
  }
  for (const auto& m : c.methods) {
    bool known = false;
    for (const auto& name : method_names()) known = known || name == m;
    if (!known) throw FormatError("bench config: unknown method '" + m + "'");
  }
  if (c.threads < 1) c.threads = 1;
  return c;
}

BenchRecord make_record(const std::string& instance, const std::string& method,
                        const PottsInstance& inst, const MethodOutcome& outcome,
                        const std::vector<Label>* truth) {
  BenchRecord r;
  r.instance = instance;
  r.method = method;
  r.nodes = inst.node_count();
  r.labels = inst.label_count();
  r.labeled_fraction = labeled_fraction(outcome.x);
  r.maxflow_phases = outcome.maxflow_phases;
  r.augmentations = outcome.flow.augmentations;
  r.arc_scans = outcome.flow.arc_scans;
  r.work = outcome.flow.work();
  r.wall_ms = outcome.wall_ms;
  r.energy = outcome.energy;
  if (truth) r.error_rate = error_rate(outcome.full ? *outcome.full : outcome.x, *truth);
  return r;
}

namespace {

struct Cell {
  std::string id;
  InstanceFile file;
  std::vector<Label> truth;
  bool has_truth = false;
};

}  // namespace

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  std::vector<Cell> cells;
  for (const auto seed : config.seeds) {
    for (const auto& size : config.sizes) {
      for (const Label k : config.labels) {
        for (const Cost lambda : config.lambdas) {
          Cell cell;
          std::ostringstream id;
          id << config.generator << "-s" << seed << "-" << size.width << "x" << size.height
             << "-k" << k << "-l" << lambda;
          cell.id = id.str();
          if (config.generator == "stereo") {
            StereoSpec spec;
            spec.width = size.width;
            spec.height = size.height;
            spec.labels = config.subsample_from > 0 ? config.subsample_from : k;
            spec.noise = config.noise;
            spec.window = config.window;
            spec.lambda = lambda;
            auto st = generate_stereo(seed, spec);
            if (config.subsample_from > 0) {
              cell.file = subsample_labels(st.file, k);
              cell.truth = subsample_truth(st.truth, config.subsample_from, k);
            } else {
              cell.file = std::move(st.file);
              cell.truth = std::move(st.truth);
            }
            cell.has_truth = true;
          } else {
            RandomSpec spec;
            spec.width = size.width;
            spec.height = size.height;
            spec.labels = k;
            spec.lambda_lo = lambda;
            spec.lambda_hi = lambda;
            cell.file = generate_random(seed, spec);
          }
          cells.push_back(std::move(cell));
        }
      }
    }
  }

  const std::size_t per_cell = config.methods.size();
  std::vector<BenchRecord> records(cells.size() * per_cell);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < records.size(); job = next++) {
      const Cell& cell = cells[job / per_cell];
      const auto& method = config.methods[job % per_cell];
      const auto outcome = run_method(cell.file.instance, method);
      records[job] = make_record(cell.id, method, cell.file.instance, outcome,
                                 cell.has_truth ? &cell.truth : nullptr);
    }
  };
  if (config.threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < config.threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return records;
}

void write_csv_row(std::ostream& out, const BenchRecord& r) {
  std::ostringstream line;
  line << r.instance << "," << r.method << "," << r.nodes << "," << r.labels << ","
       << std::fixed << std::setprecision(6) << r.labeled_fraction << "," << r.maxflow_phases
       << "," << r.augmentations << "," << r.arc_scans << "," << r.work << ","
       << std::setprecision(3) << r.wall_ms << ",";
  if (r.energy) line << *r.energy;
  line << ",";
  if (r.error_rate) line << std::setprecision(6) << *r.error_rate;
  out << line.str() << "\n";
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kCsvHeader << "\n";
  for (const auto& r : records) write_csv_row(out, r);
}

}  // namespace kpotts
