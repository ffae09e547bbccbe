#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "wiener/assignment.hpp"
#include "wiener/errors.hpp"
#include "wiener/instance.hpp"
#include "wiener/solve_report.hpp"
#include "wiener/weighted_tree.hpp"

namespace wiener {

// Pendant capacity of position k when internal vertex `internal` sits there:
// the degree minus one backbone neighbour per non-end side.
inline int pendant_capacity(const Instance& inst, int internal, int q, int k) {
  return inst.degree(internal) - 2 - degree_balance_rhs(q, k);
}

namespace detail {

// Walks every way of distributing pendant indices q..n-1 into per-position
// blocks of exactly the required sizes. `assigned_position[j]` holds the
// position of pendant q+j; -1 while unassigned.
template <typename Leaf>
void distribute_pendants(const Instance& inst, const std::vector<int>& capacity, int position,
                         std::vector<int>& assigned_position, std::vector<int>& remaining,
                         Leaf&& leaf) {
  const int q = inst.q();
  if (position == q) {
    leaf();
    return;
  }
  const int need = capacity[position];
  // Choose `need` of the remaining pendants for this position, in index order
  // to avoid revisiting the same set.
  std::vector<int> chosen;
  std::function<void(int, int)> choose = [&](int start, int left) {
    if (left == 0) {
      for (int j : chosen) assigned_position[j] = position;
      std::vector<int> next_remaining;
      next_remaining.reserve(remaining.size() - need);
      for (int j : remaining)
        if (assigned_position[j] < 0) next_remaining.push_back(j);
      std::swap(remaining, next_remaining);
      distribute_pendants(inst, capacity, position + 1, assigned_position, remaining, leaf);
      std::swap(remaining, next_remaining);
      for (int j : chosen) assigned_position[j] = -1;
      return;
    }
    for (int idx = start; idx <= static_cast<int>(remaining.size()) - left; ++idx) {
      chosen.push_back(remaining[idx]);
      choose(idx + 1, left - 1);
      chosen.pop_back();
    }
  };
  choose(0, need);
}

}  // namespace detail

// Calls `cb(internal_at_position, pendant_position)` for every feasible binary
// assignment: internal_at_position[k] is the canonical index of the internal
// vertex at position k, pendant_position[j] the position of pendant q+j.
// With `halve_by_reversal` only one of each backbone-mirrored pair is visited.
template <typename Callback>
void for_each_feasible_assignment(const Instance& inst, bool halve_by_reversal, Callback&& cb) {
  const int q = inst.q();
  if (q == 0) return;
  std::vector<int> perm(q);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end());
  do {
    if (halve_by_reversal && q > 1) {
      // Keep the lexicographically smaller of the permutation and its mirror.
      bool keep = true;
      for (int k = 0; k < q; ++k) {
        if (perm[k] != perm[q - 1 - k]) {
          keep = perm[k] < perm[q - 1 - k];
          break;
        }
      }
      if (!keep) continue;
    }
    std::vector<int> capacity(q);
    for (int k = 0; k < q; ++k) capacity[k] = pendant_capacity(inst, perm[k], q, k);
    std::vector<int> assigned_position(inst.pendant_count(), -1);
    std::vector<int> remaining(inst.pendant_count());
    std::iota(remaining.begin(), remaining.end(), 0);
    detail::distribute_pendants(inst, capacity, 0, assigned_position, remaining,
                                [&]() { cb(perm, assigned_position); });
  } while (std::next_permutation(perm.begin(), perm.end()));
}

inline AssignmentMatrix assignment_from_layout(const Instance& inst,
                                               const std::vector<int>& internal_at_position,
                                               const std::vector<int>& pendant_position) {
  AssignmentMatrix x(inst.n(), inst.q(), AssignmentMode::binary);
  for (int k = 0; k < inst.q(); ++k) x(internal_at_position[k], k) = 1.0;
  for (int j = 0; j < inst.pendant_count(); ++j) x(inst.q() + j, pendant_position[j]) = 1.0;
  return x;
}

inline double enumeration_size_estimate(const Instance& inst) {
  const int q = inst.q();
  double perms = 1.0;
  for (int k = 2; k <= q; ++k) perms *= k;
  // Pendant multinomial for the identity arrangement; the count varies only
  // through which internals take the end bonuses, so this is representative.
  double distributions = 1.0;
  int left = inst.pendant_count();
  for (int k = 0; k < q; ++k) {
    const int m = pendant_capacity(inst, k, q, k);
    for (int t = 0; t < m; ++t) distributions *= static_cast<double>(left - t) / (t + 1);
    left -= m;
  }
  return perms * distributions;
}

// Exhaustive maximization over every feasible binary assignment (all internal
// orderings up to backbone reversal, all pendant distributions).
inline SolveReport brute_force_caterpillars(const Instance& inst) {
  const auto started = std::chrono::steady_clock::now();
  const int q = inst.q();
  if (q == 0) {
    SolveReport report{AssignmentMatrix(inst.n(), 0, AssignmentMode::binary), 0.0, 1, 0, 0.0,
                       true};
    report.value = inst.weight(0) * inst.weight(1);
    return report;
  }
  if (enumeration_size_estimate(inst) > 1e8) {
    fail(errc::search_space_too_large, "assignment enumeration exceeds 1e8 leaves");
  }

  double best_value = -1.0;
  std::vector<int> best_perm;
  std::vector<int> best_pendant_position;
  std::uint64_t leaves = 0;
  std::vector<double> weight_at(q, 0.0);
  for_each_feasible_assignment(inst, /*halve_by_reversal=*/true,
                               [&](const std::vector<int>& perm, const std::vector<int>& pend) {
                                 ++leaves;
                                 std::fill(weight_at.begin(), weight_at.end(), 0.0);
                                 for (int k = 0; k < q; ++k) weight_at[k] += inst.weight(perm[k]);
                                 for (int j = 0; j < inst.pendant_count(); ++j)
                                   weight_at[pend[j]] += inst.weight(q + j);
                                 const double value = qap_objective_from_weights(weight_at) +
                                                      inst.assignment_constant();
                                 if (value > best_value) {
                                   best_value = value;
                                   best_perm = perm;
                                   best_pendant_position = pend;
                                 }
                               });

  SolveReport report{assignment_from_layout(inst, best_perm, best_pendant_position), best_value,
                     leaves, 0, 0.0, true};
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

namespace detail {

inline WeightedTree tree_from_pruefer(const std::vector<double>& weights,
                                      const std::vector<int>& pruefer) {
  const int n = static_cast<int>(weights.size());
  std::vector<int> degree(n, 1);
  for (int v : pruefer) ++degree[v];
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  std::vector<bool> used(n, false);
  for (int v : pruefer) {
    int leaf = -1;
    for (int u = 0; u < n; ++u) {
      if (degree[u] == 1 && !used[u]) {
        leaf = u;
        break;
      }
    }
    edges.emplace_back(leaf, v);
    used[leaf] = true;
    --degree[v];
  }
  int a = -1, b = -1;
  for (int u = 0; u < n; ++u) {
    if (degree[u] == 1 && !used[u]) (a < 0 ? a : b) = u;
  }
  edges.emplace_back(a, b);
  return WeightedTree(weights, edges);
}

}  // namespace detail

// Maximum index over every labeled tree of the class: vertex i carries weight
// mu_i and degree d_i exactly. Trees are enumerated through the distinct
// permutations of the degree-derived multiset sequence, in which vertex i
// appears d_i - 1 times.
inline double brute_force_trees(const Instance& inst) {
  const int n = inst.n();
  if (n > 9) fail(errc::too_large, "tree enumeration limited to n <= 9");
  if (n == 2) return inst.weight(0) * inst.weight(1);
  std::vector<int> sequence;
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < inst.degree(i) - 1; ++t) sequence.push_back(i);
  std::sort(sequence.begin(), sequence.end());
  double best = -1.0;
  do {
    best = std::max(best, vwwi_tree(detail::tree_from_pruefer(inst.weights(), sequence)));
  } while (std::next_permutation(sequence.begin(), sequence.end()));
  return best;
}

}  // namespace wiener
