// Command-line front end: validation, index evaluation, bounds, the solvers
// and the benchmark experiments. Exit codes: 0 on success, 2 on invalid
// input, 3 when a solver hit its limit without an optimality proof.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wiener/wiener.hpp"

namespace {

struct Options {
  std::string instance_path;
  std::string tree_path;
  std::uint64_t seed = 0;
  double time_limit = std::numeric_limits<double>::infinity();
  std::uint64_t node_limit = std::numeric_limits<std::uint64_t>::max();
  int threads = 1;
  std::string out_path;
  std::string format = "json";
  std::vector<int> sizes;
  int per_n = 100;
};

void emit(const Options& options, const std::string& text) {
  if (options.out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    wiener::write_text_file(options.out_path, text);
  }
}

std::string format_value(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

int run(int argc, char** argv) {
  CLI::App app{"Maximize the vertex-weighted Wiener index over trees with given "
               "vertex weight and degree sequences"};
  app.require_subcommand(1);
  Options options;
  app.add_option("--seed", options.seed, "random seed (default 0)");
  app.add_option("--time-limit", options.time_limit, "solver time limit in seconds");
  app.add_option("--node-limit", options.node_limit, "solver node limit");
  app.add_option("--threads", options.threads, "worker threads for solve/bench");
  app.add_option("--out", options.out_path, "write output to this path instead of stdout");
  app.add_option("--format", options.format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* validate = app.add_subcommand("validate", "validate an instance file");
  validate->add_option("instance", options.instance_path, "instance JSON path")->required();
  auto* vwwi = app.add_subcommand("vwwi", "evaluate the index of a tree file");
  vwwi->add_option("tree", options.tree_path, "tree JSON path")->required();
  auto* ub = app.add_subcommand("ub", "upper bound for an instance");
  ub->add_option("instance", options.instance_path)->required();
  auto* greedy = app.add_subcommand("greedy", "greedy heuristic solution");
  greedy->add_option("instance", options.instance_path)->required();
  auto* solve = app.add_subcommand("solve", "exact branch-and-bound solution");
  solve->add_option("instance", options.instance_path)->required();
  auto* brute = app.add_subcommand("brute", "exhaustive-enumeration solution");
  brute->add_option("instance", options.instance_path)->required();

  auto add_bench_options = [&](CLI::App* cmd) {
    cmd->add_option("--sizes", options.sizes, "graph orders to sweep")
        ->delimiter(',')
        ->required();
    cmd->add_option("--per-n", options.per_n, "instances per graph order");
  };
  auto* bench_error = app.add_subcommand("bench-error", "upper bound vs greedy error sweep");
  add_bench_options(bench_error);
  auto* bench_time = app.add_subcommand("bench-time", "branch-and-bound timing sweep");
  add_bench_options(bench_time);
  auto* bench_gap = app.add_subcommand("bench-gap", "bound and greedy gap vs exact optimum");
  add_bench_options(bench_gap);

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) {
    wiener::Instance inst =
        wiener::instance_from_json(wiener::read_text_file(options.instance_path));
    emit(options, wiener::instance_to_json(inst).dump(2) + "\n");
    return 0;
  }
  if (vwwi->parsed()) {
    wiener::WeightedTree tree =
        wiener::tree_from_json(wiener::read_text_file(options.tree_path));
    emit(options, format_value(wiener::vwwi_tree(tree)) + "\n");
    return 0;
  }
  if (ub->parsed()) {
    wiener::Instance inst =
        wiener::instance_from_json(wiener::read_text_file(options.instance_path));
    emit(options, wiener::bound_report_to_json(wiener::upper_bound(inst)).dump(2) + "\n");
    return 0;
  }
  if (greedy->parsed() || solve->parsed() || brute->parsed()) {
    wiener::Instance inst =
        wiener::instance_from_json(wiener::read_text_file(options.instance_path));
    wiener::SolveReport report = [&]() {
      if (greedy->parsed()) return wiener::greedy_caterpillar(inst);
      if (brute->parsed()) return wiener::brute_force_caterpillars(inst);
      wiener::SolveLimits limits;
      limits.time_limit_seconds = options.time_limit;
      limits.node_limit = options.node_limit;
      limits.threads = options.threads;
      return wiener::branch_and_bound(inst, limits);
    }();
    emit(options, wiener::solve_report_to_json(inst, report).dump(2) + "\n");
    return solve->parsed() && !report.proven_optimal ? 3 : 0;
  }

  const auto table = [&]() {
    if (bench_error->parsed()) {
      return wiener::error_experiment(options.sizes, options.per_n, options.seed,
                                      options.threads);
    }
    if (bench_time->parsed()) {
      return wiener::timing_experiment(options.sizes, options.per_n, options.seed,
                                       options.time_limit, options.threads);
    }
    return wiener::gap_experiment(options.sizes, options.per_n, options.seed, options.threads);
  }();
  emit(options, wiener::to_csv(table));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const wiener::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
