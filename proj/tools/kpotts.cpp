#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kpotts/bench.hpp"
#include "kpotts/generators.hpp"
#include "kpotts/instance_io.hpp"
#include "kpotts/verify.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitVerifyFailed = 2;

int print_report(const kpotts::VerifyReport& report) {
  for (const auto& item : report.items) {
    std::cerr << (item.passed ? "ok   " : "FAIL ") << item.name;
    if (!item.detail.empty()) std::cerr << "  (" << item.detail << ")";
    std::cerr << "\n";
  }
  return report.ok() ? 0 : kExitVerifyFailed;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw kpotts::FormatError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Potts energy minimization with partial optimality"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Run a method on an instance file");
  std::string input;
  std::string output;
  std::string method = "full-pipeline";
  std::string pgm;
  std::string stats_path;
  kpotts::Cost lambda = -1;
  kpotts::Cost scale = 1;
  bool do_verify = false;
  bool stats = false;
  bool maximize = false;
  solve->add_option("-i,--input", input, "Instance file")->required();
  solve->add_option("-o,--output", output, "Labeling output (one label per line, -1 = unlabeled)");
  solve->add_option("-m,--method", method, "Solver")
      ->check(CLI::IsMember(kpotts::method_names()));
  solve->add_option("--lambda", lambda, "Override the uniform weight of a grid instance");
  solve->add_option("--scale", scale, "Multiply all costs by this factor first")
      ->check(CLI::PositiveNumber);
  solve->add_flag("--verify", do_verify, "Run every applicable oracle; exit 2 on a violation");
  solve->add_flag("--stats", stats, "Print a CSV statistics row");
  solve->add_option("--stats-file", stats_path, "Append the statistics row to a file");
  solve->add_option("--pgm", pgm, "Write the labeling of a grid instance as PGM");
  solve->add_flag("--mp", maximize, "Maximal persistent sets for the Kovtun methods");

  // generate
  auto* generate = app.add_subcommand("generate", "Write a synthetic instance");
  std::string kind = "random";
  std::string truth_path;
  std::uint64_t seed = 1;
  kpotts::RandomSpec rspec;
  kpotts::StereoSpec sspec;
  std::string topology = "grid";
  kpotts::Label labels = 4;
  int width = 8;
  int height = 8;
  kpotts::Label subsample_from = 0;
  kpotts::Cost gen_lambda = -1;
  generate->add_option("--type", kind, "Generator")->check(CLI::IsMember({"random", "stereo"}));
  generate->add_option("-o,--output", output, "Instance file")->required();
  generate->add_option("--seed", seed, "Random seed");
  generate->add_option("--labels", labels, "Number of labels")->check(CLI::PositiveNumber);
  generate->add_option("--width", width, "Grid width")->check(CLI::PositiveNumber);
  generate->add_option("--height", height, "Grid height")->check(CLI::PositiveNumber);
  generate->add_option("--lambda", gen_lambda,
                       "Uniform edge weight (random: fixes the weight range)");
  generate->add_option("--topology", topology, "random: grid or sparse")
      ->check(CLI::IsMember({"grid", "sparse"}));
  generate->add_option("--nodes", rspec.nodes, "random sparse: node count");
  generate->add_option("--density", rspec.density, "random sparse: edge probability");
  generate->add_option("--cost-max", rspec.cost_hi, "random: largest unary cost");
  generate->add_option("--lambda-max", rspec.lambda_hi, "random: largest edge weight");
  generate->add_option("--noise", sspec.noise, "stereo: noise standard deviation");
  generate->add_option("--window", sspec.window, "stereo: aggregation window (odd)");
  generate->add_option("--subsample-from", subsample_from,
                       "stereo: generate this many disparities and merge down to --labels");
  generate->add_option("--truth", truth_path, "stereo: write the ground-truth labeling");

  // bench
  auto* bench = app.add_subcommand("bench", "Run a benchmark grid from a JSON config");
  std::string config_path;
  bench->add_option("-c,--config", config_path, "JSON config")->required();
  bench->add_option("-o,--output", output, "CSV output (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run the oracle suite on an instance file");
  verify->add_option("-i,--input", input, "Instance file")->required();
  verify->add_option("--scale", scale, "Multiply all costs by this factor first")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      auto file = kpotts::load_instance(input);
      if (lambda >= 0) file = kpotts::with_lambda(file, lambda);
      if (scale != 1) file = kpotts::rescale(file, scale);
      const auto& inst = file.instance;
      const auto outcome = kpotts::run_method(inst, method, maximize);
      if (!output.empty()) kpotts::save_labeling(output, outcome.x);
      if (!pgm.empty()) {
        if (!file.grid) throw kpotts::InvalidInstance("--pgm needs a grid instance");
        kpotts::save_pgm(pgm, outcome.x, *file.grid, inst.label_count());
      }
      const auto record = kpotts::make_record(input, method, inst, outcome, nullptr);
      if (stats) {
        std::cout << kpotts::kCsvHeader << "\n";
        kpotts::write_csv_row(std::cout, record);
      }
      if (!stats_path.empty()) {
        std::ofstream out(stats_path, std::ios::app);
        if (!out) throw kpotts::FormatError("cannot write " + stats_path);
        kpotts::write_csv_row(out, record);
      }
      if (output.empty() && !stats) kpotts::write_labeling(std::cout, outcome.x);
      if (do_verify) return print_report(kpotts::verify_instance(inst));
      return 0;
    }

    if (*generate) {
      kpotts::InstanceFile file;
      if (kind == "random") {
        rspec.topology = topology == "grid" ? kpotts::Topology::Grid : kpotts::Topology::Sparse;
        rspec.width = width;
        rspec.height = height;
        rspec.labels = labels;
        if (gen_lambda >= 0) rspec.lambda_lo = rspec.lambda_hi = gen_lambda;
        file = kpotts::generate_random(seed, rspec);
        if (rspec.topology == kpotts::Topology::Grid && gen_lambda >= 0) {
          file.lambda = gen_lambda;
        }
      } else {
        sspec.width = width;
        sspec.height = height;
        sspec.labels = subsample_from > 0 ? subsample_from : labels;
        if (gen_lambda >= 0) sspec.lambda = gen_lambda;
        auto st = kpotts::generate_stereo(seed, sspec);
        if (subsample_from > 0) {
          file = kpotts::subsample_labels(st.file, labels);
          st.truth = kpotts::subsample_truth(st.truth, subsample_from, labels);
        } else {
          file = std::move(st.file);
        }
        if (!truth_path.empty()) kpotts::save_labeling(truth_path, st.truth);
      }
      kpotts::save_instance(output, file);
      return 0;
    }

    if (*bench) {
      const auto config = kpotts::parse_bench_config(read_file(config_path));
      const auto records = kpotts::run_bench(config);
      if (output.empty()) {
        kpotts::write_csv(std::cout, records);
      } else {
        std::ofstream out(output);
        if (!out) throw kpotts::FormatError("cannot write " + output);
        kpotts::write_csv(out, records);
      }
      return 0;
    }

    if (*verify) {
      auto file = kpotts::load_instance(input);
      if (scale != 1) file = kpotts::rescale(file, scale);
      return print_report(kpotts::verify_instance(file.instance));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
