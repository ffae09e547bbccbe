#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wiener/assignment.hpp"
#include "wiener/brute_force.hpp"
#include "wiener/errors.hpp"
#include "wiener/greedy.hpp"
#include "wiener/instance.hpp"
#include "wiener/relaxation.hpp"

namespace wiener {

struct BoundReport {
  double value = 0.0;
  std::string method;  // "closed_form", "rocp_matrix", "partial_relaxation" or "exact_small"
  double gap_estimate = 0.0;
  std::optional<AssignmentMatrix> certificate;
};

// Pendant block boundaries: D_0 = 0 and D_k = 2 + sum_{i=1}^{2k} (d_i - 2),
// the cumulative pendant count consumed by the first k mirrored position
// pairs. For odd q one extra boundary covers the d_q - 2 central pendants.
inline std::vector<int> pendant_block_boundaries(const Instance& inst) {
  const int q = inst.q();
  std::vector<int> boundaries(1, 0);
  int acc = 2;
  for (int t = 1; t <= q / 2; ++t) {
    acc += inst.degree(2 * t - 2) - 2 + inst.degree(2 * t - 1) - 2;
    boundaries.push_back(acc);
  }
  if (q % 2 == 1) boundaries.push_back(acc + inst.degree(q - 1) - 2);
  return boundaries;
}

// The symmetric fractional optimum of the continuous relaxation for weight
// sequences monotone in degrees: internal vertices split 0.5/0.5 in index
// pairs over mirrored positions moving inward, pendants likewise in blocks
// whose sizes follow the internal degrees; for odd q the last internal vertex
// and the d_q - 2 lightest pendants take the central position outright.
inline AssignmentMatrix rocp_solution_matrix(const Instance& inst) {
  const int q = inst.q();
  if (q < 4) fail(errc::small_backbone, "relaxation matrix needs q >= 4, got " + std::to_string(q));
  if (!inst.monotone()) {
    fail(errc::non_monotone_weights, "relaxation matrix needs weights monotone in degrees");
  }
  AssignmentMatrix x(inst.n(), q, AssignmentMode::fractional);
  const int half = q / 2;
  for (int t = 0; t < half; ++t) {
    x(2 * t, t) = x(2 * t, q - 1 - t) = 0.5;
    x(2 * t + 1, t) = x(2 * t + 1, q - 1 - t) = 0.5;
  }
  if (q % 2 == 1) x(q - 1, half) = 1.0;

  const std::vector<int> boundaries = pendant_block_boundaries(inst);
  for (int t = 1; t <= half; ++t) {
    for (int j = boundaries[t - 1]; j < boundaries[t]; ++j) {
      x(q + j, t - 1) = x(q + j, q - t) = 0.5;
    }
  }
  if (q % 2 == 1) {
    for (int j = boundaries[half]; j < boundaries[half + 1]; ++j) x(q + j, half) = 1.0;
  }
  return x;
}

struct ClosedFormTerms {
  std::vector<double> paired_weights;    // M_k, k = 1..ceil(q/2) (1-based in the math)
  std::vector<int> block_boundaries;     // D_k, k = 0..ceil(q/2)
  double value = 0.0;
};

// Closed-form value of the bound: evaluates the index at the symmetric
// relaxation optimum without building the matrix. Uses the pendant weight sum
// in the constant term, mirroring the decomposition used everywhere else; the
// matrix evaluation through rocp_solution_matrix stays the authoritative
// cross-check.
inline ClosedFormTerms closed_form_terms(const Instance& inst) {
  const int q = inst.q();
  if (q < 4) fail(errc::small_backbone, "closed form needs q >= 4, got " + std::to_string(q));
  if (!inst.monotone()) {
    fail(errc::non_monotone_weights, "closed form needs weights monotone in degrees");
  }
  ClosedFormTerms terms;
  terms.block_boundaries = pendant_block_boundaries(inst);
  const int half = q / 2;
  for (int t = 1; t <= half; ++t) {
    double m = inst.weight(2 * t - 2) + inst.weight(2 * t - 1);
    for (int j = terms.block_boundaries[t - 1]; j < terms.block_boundaries[t]; ++j) {
      m += inst.weight(q + j);
    }
    terms.paired_weights.push_back(0.5 * m);
  }
  if (q % 2 == 1) {
    double m = inst.weight(q - 1);
    for (int j = terms.block_boundaries[half]; j < terms.block_boundaries[half + 1]; ++j) {
      m += inst.weight(q + j);
    }
    terms.paired_weights.push_back(0.5 * m);
  }

  const double mu = inst.total_weight();
  double quadratic = mu * mu * (q + 1) / 4.0;
  double inner = 0.0;  // sum_{l<k} l M_l
  for (std::size_t k = 1; k <= terms.paired_weights.size(); ++k) {
    const double mk = terms.paired_weights[k - 1];
    quadratic -= 2.0 * mk * (k * mk + 2.0 * inner);
    inner += k * mk;
  }
  terms.value = quadratic + inst.assignment_constant();
  return terms;
}

// Upper bound on the index over the whole class. For q >= 4 this is the value
// of the symmetric relaxation optimum; tiny backbones are solved exactly.
inline BoundReport upper_bound(const Instance& inst) {
  BoundReport report;
  if (inst.q() <= 3) {
    SolveReport exact = brute_force_caterpillars(inst);
    report.value = exact.value;
    report.method = "exact_small";
    report.gap_estimate = 0.0;
    return report;
  }
  if (!inst.monotone()) {
    fail(errc::non_monotone_weights, "upper bound needs weights monotone in degrees");
  }
  AssignmentMatrix x = rocp_solution_matrix(inst);
  report.value = vwwi_assignment(inst, x);
  report.method = "rocp_matrix";
  const double greedy_value = greedy_caterpillar(inst).value;
  report.gap_estimate = greedy_value > 0.0
                            ? report.value / greedy_value - 1.0
                            : std::numeric_limits<double>::infinity();
  report.certificate = std::move(x);
  return report;
}

// Certified upper bound over all completions of a partial assignment, given
// as (vertex, position) pins with 0-based canonical vertex ids and 0-based
// positions.
inline BoundReport partial_relaxation_bound(const Instance& inst,
                                            const std::vector<std::pair<int, int>>& fixed) {
  const int n = inst.n();
  const int q = inst.q();
  std::vector<int> pinned(n, -1);
  for (const auto& [i, k] : fixed) {
    if (i < 0 || i >= n || k < 0 || k >= q) {
      fail(errc::inconsistent_partial, "pinned entry out of range");
    }
    if (pinned[i] >= 0 && pinned[i] != k) {
      fail(errc::inconsistent_partial, "vertex " + std::to_string(i) + " pinned twice");
    }
    pinned[i] = k;
  }
  RelaxationSolver solver(inst, pinned);
  if (!solver.feasible()) {
    fail(errc::inconsistent_partial, "pins admit no feasible completion");
  }
  const bool no_pins = fixed.empty();
  if (no_pins && inst.monotone() && q >= 4) {
    solver.set_start(rocp_solution_matrix(inst));
  }
  RelaxationResult result = solver.solve();
  BoundReport report;
  report.value = result.bound + inst.assignment_constant();
  report.method = "partial_relaxation";
  report.gap_estimate = result.gap / std::max(1.0, std::abs(result.bound));
  report.certificate = solver.point();
  return report;
}

struct RelativeError {
  double value = 0.0;
  bool infinite = false;
};

// UB / achieved - 1; undefined for non-positive achieved values, which is
// reported as infinite with the flag set.
inline RelativeError relative_error(const Instance& inst, double achieved) {
  if (achieved <= 0.0) {
    return {std::numeric_limits<double>::infinity(), true};
  }
  return {upper_bound(inst).value / achieved - 1.0, false};
}

}  // namespace wiener
