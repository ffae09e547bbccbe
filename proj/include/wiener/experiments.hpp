#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "wiener/bounds.hpp"
#include "wiener/branch_and_bound.hpp"
#include "wiener/greedy.hpp"
#include "wiener/instance.hpp"
#include "wiener/random_instance.hpp"

namespace wiener {

struct ExperimentRow {
  int n = 0;
  long long instance_index = 0;  // -1 marks a summary row
  std::optional<std::uint64_t> seed;
  std::optional<double> ub;
  std::optional<double> greedy;
  std::optional<double> exact;
  std::optional<double> re_estimate;
  std::optional<double> seconds;
  std::optional<double> nodes;
  std::optional<bool> optimal;
};

struct ExperimentTable {
  std::vector<ExperimentRow> rows;
};

namespace detail {

inline std::uint64_t instance_seed(std::uint64_t base, int n, int index) {
  return splitmix64(base ^ splitmix64(static_cast<std::uint64_t>(n) * 0x100000001ULL +
                                      static_cast<std::uint64_t>(index)));
}

inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

// Linear-interpolation quantile of a sorted copy.
inline double quantile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double idx = p * (values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(idx);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = idx - lo;
  return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

template <typename Get>
inline std::optional<double> column_quantile(const std::vector<ExperimentRow>& rows, double p,
                                             Get&& get) {
  std::vector<double> values;
  for (const ExperimentRow& row : rows) {
    const std::optional<double> v = get(row);
    if (v) values.push_back(*v);
  }
  if (values.empty()) return std::nullopt;
  return quantile(std::move(values), p);
}

inline void append_summaries(ExperimentTable& table, const std::vector<ExperimentRow>& rows,
                             int n) {
  // Three summary rows per n, all marked instance -1, in the fixed order
  // median, p10, p90.
  const double levels[3] = {0.5, 0.1, 0.9};
  for (int s = 0; s < 3; ++s) {
    ExperimentRow summary;
    summary.n = n;
    summary.instance_index = -1;
    const double p = levels[s];
    summary.ub = column_quantile(rows, p, [](const ExperimentRow& r) { return r.ub; });
    summary.greedy = column_quantile(rows, p, [](const ExperimentRow& r) { return r.greedy; });
    summary.exact = column_quantile(rows, p, [](const ExperimentRow& r) { return r.exact; });
    summary.re_estimate =
        column_quantile(rows, p, [](const ExperimentRow& r) { return r.re_estimate; });
    summary.seconds = column_quantile(rows, p, [](const ExperimentRow& r) { return r.seconds; });
    summary.nodes = column_quantile(rows, p, [](const ExperimentRow& r) { return r.nodes; });
    table.rows.push_back(summary);
  }
}

// Runs `body(n, index)` over the size grid on a small pool; results keyed by
// (n, index) so output does not depend on the schedule.
template <typename Body>
inline void grid_for_each(const std::vector<int>& sizes, int per_n, int threads, Body&& body) {
  struct Cell {
    int n;
    int index;
  };
  std::vector<Cell> cells;
  for (int n : sizes)
    for (int index = 0; index < per_n; ++index) cells.push_back({n, index});
  threads = std::max(1, threads);
  if (threads == 1) {
    for (const Cell& cell : cells) body(cell.n, cell.index);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      while (true) {
        const std::size_t at = cursor.fetch_add(1);
        if (at >= cells.size()) break;
        body(cells[at].n, cells[at].index);
      }
    });
  }
  for (auto& worker : pool) worker.join();
}

}  // namespace detail

// Upper bound vs greedy value: records the computable error estimate
// ub/greedy - 1 per instance plus per-n median and decile rows.
inline ExperimentTable error_experiment(const std::vector<int>& sizes, int per_n,
                                        std::uint64_t seed, int threads = 1) {
  ExperimentTable table;
  std::vector<std::vector<ExperimentRow>> by_size(sizes.size());
  for (auto& rows : by_size) rows.resize(per_n);
  detail::grid_for_each(sizes, per_n, threads, [&](int n, int index) {
    const std::uint64_t inst_seed = detail::instance_seed(seed, n, index);
    const Instance inst = random_instance(n, inst_seed, /*enforce_monotone=*/true);
    ExperimentRow row;
    row.n = n;
    row.instance_index = index;
    row.seed = inst_seed;
    row.ub = upper_bound(inst).value;
    row.greedy = greedy_caterpillar(inst).value;
    row.re_estimate = *row.greedy > 0.0 ? *row.ub / *row.greedy - 1.0
                                        : std::numeric_limits<double>::infinity();
    row.seconds = 0.0;
    const std::size_t size_pos =
        std::find(sizes.begin(), sizes.end(), n) - sizes.begin();
    by_size[size_pos][index] = row;
  });
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    for (const ExperimentRow& row : by_size[s]) table.rows.push_back(row);
    detail::append_summaries(table, by_size[s], sizes[s]);
  }
  return table;
}

// Branch-and-bound timing sweep.
inline ExperimentTable timing_experiment(const std::vector<int>& sizes, int per_n,
                                         std::uint64_t seed, double time_limit_seconds,
                                         int threads = 1) {
  ExperimentTable table;
  std::vector<std::vector<ExperimentRow>> by_size(sizes.size());
  for (auto& rows : by_size) rows.resize(per_n);
  detail::grid_for_each(sizes, per_n, threads, [&](int n, int index) {
    const std::uint64_t inst_seed = detail::instance_seed(seed, n, index);
    const Instance inst = random_instance(n, inst_seed, /*enforce_monotone=*/true);
    SolveLimits limits;
    limits.time_limit_seconds = time_limit_seconds;
    const SolveReport solved = branch_and_bound(inst, limits);
    ExperimentRow row;
    row.n = n;
    row.instance_index = index;
    row.seed = inst_seed;
    row.ub = upper_bound(inst).value;
    row.greedy = greedy_caterpillar(inst).value;
    row.exact = solved.value;
    row.re_estimate = *row.greedy > 0.0 ? *row.ub / *row.greedy - 1.0
                                        : std::numeric_limits<double>::infinity();
    row.seconds = solved.wall_seconds;
    row.nodes = static_cast<double>(solved.nodes_explored);
    row.optimal = solved.proven_optimal;
    const std::size_t size_pos =
        std::find(sizes.begin(), sizes.end(), n) - sizes.begin();
    by_size[size_pos][index] = row;
  });
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    for (const ExperimentRow& row : by_size[s]) table.rows.push_back(row);
    detail::append_summaries(table, by_size[s], sizes[s]);
  }
  return table;
}

// Upper bound and greedy value against the exact optimum.
inline ExperimentTable gap_experiment(const std::vector<int>& sizes, int per_n,
                                      std::uint64_t seed, int threads = 1) {
  return timing_experiment(sizes, per_n, seed,
                           std::numeric_limits<double>::infinity(), threads);
}

struct GapSummary {
  int n = 0;
  double mean_ub_over_opt = 0.0;
  double mean_greedy_over_opt = 0.0;
};

// Per-n means of ub/opt and greedy/opt over the instance rows of a table.
inline std::vector<GapSummary> gap_summaries(const ExperimentTable& table) {
  std::vector<GapSummary> out;
  std::vector<int> counts;
  for (const ExperimentRow& row : table.rows) {
    if (row.instance_index < 0 || !row.exact || !row.ub || !row.greedy) continue;
    std::size_t at = 0;
    for (; at < out.size(); ++at) {
      if (out[at].n == row.n) break;
    }
    if (at == out.size()) {
      out.push_back({row.n, 0.0, 0.0});
      counts.push_back(0);
    }
    out[at].mean_ub_over_opt += *row.ub / *row.exact;
    out[at].mean_greedy_over_opt += *row.greedy / *row.exact;
    ++counts[at];
  }
  for (std::size_t at = 0; at < out.size(); ++at) {
    out[at].mean_ub_over_opt /= counts[at];
    out[at].mean_greedy_over_opt /= counts[at];
  }
  return out;
}

// CSV with one row per instance plus the per-n summary rows; LF endings.
inline std::string to_csv(const ExperimentTable& table) {
  std::string out = "n,instance,seed,ub,greedy,exact,re_estimate,seconds,nodes,optimal\n";
  auto cell = [](const std::optional<double>& v) {
    return v ? detail::format_double(*v) : std::string();
  };
  for (const ExperimentRow& row : table.rows) {
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.instance_index);
    out += ',';
    if (row.seed) out += std::to_string(*row.seed);
    out += ',';
    out += cell(row.ub);
    out += ',';
    out += cell(row.greedy);
    out += ',';
    out += cell(row.exact);
    out += ',';
    out += cell(row.re_estimate);
    out += ',';
    out += cell(row.seconds);
    out += ',';
    out += cell(row.nodes);
    out += ',';
    if (row.optimal) out += *row.optimal ? "true" : "false";
    out += '\n';
  }
  return out;
}

}  // namespace wiener
