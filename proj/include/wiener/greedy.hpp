#pragma once

#include <chrono>
#include <cstdlib>
#include <vector>

#include "wiener/assignment.hpp"
#include "wiener/brute_force.hpp"
#include "wiener/instance.hpp"
#include "wiener/solve_report.hpp"

namespace wiener {

namespace detail {

// The unique assignment of the degenerate backbones: q = 0 is a single edge,
// q = 1 a star.
inline SolveReport direct_report(const Instance& inst) {
  SolveReport report{AssignmentMatrix(inst.n(), inst.q(), AssignmentMode::binary), 0.0, 1, 0,
                     0.0, false};
  if (inst.q() == 0) {
    report.value = inst.weight(0) * inst.weight(1);
    return report;
  }
  for (int i = 0; i < inst.n(); ++i) report.assignment(i, 0) = 1.0;
  report.value = vwwi_assignment(inst, report.assignment);
  return report;
}

}  // namespace detail

// Builds a caterpillar by repeatedly assigning the next internal or pendant
// vertex (both in descending weight order) to the open backbone position with
// the highest current price. The heaviest pendant is seeded at position 1,
// prices are recomputed after every assignment, and when one of the two
// candidate sets is empty the other branch is taken; argmax ties break toward
// the lower position index.
inline SolveReport greedy_caterpillar(const Instance& inst) {
  const auto started = std::chrono::steady_clock::now();
  const int n = inst.n();
  const int q = inst.q();
  if (q <= 1) return detail::direct_report(inst);

  AssignmentMatrix x(n, q, AssignmentMode::binary);
  std::vector<double> weight_at(q, 0.0);
  std::vector<int> internal_at(q, -1);
  std::vector<int> pendants_at(q, 0);

  auto assign = [&](int vertex, int k) {
    x(vertex, k) = 1.0;
    weight_at[k] += inst.weight(vertex);
    if (inst.is_internal(vertex)) {
      internal_at[k] = vertex;
    } else {
      ++pendants_at[k];
    }
  };

  assign(q, 0);  // heaviest pendant to the outermost position
  int next_internal = 0;
  int next_pendant = q + 1;

  std::vector<double> prices(q, 0.0);
  while (next_internal < q || next_pendant < n) {
    for (int k = 0; k < q; ++k) {
      double p = 0.0;
      for (int l = 0; l < q; ++l) p += weight_at[l] * std::abs(k - l);
      prices[k] = p;
    }
    int internal_slot = -1;
    int pendant_slot = -1;
    for (int k = 0; k < q; ++k) {
      if (internal_at[k] < 0) {
        if (internal_slot < 0 || prices[k] > prices[internal_slot]) internal_slot = k;
      } else if (pendants_at[k] < pendant_capacity(inst, internal_at[k], q, k)) {
        if (pendant_slot < 0 || prices[k] > prices[pendant_slot]) pendant_slot = k;
      }
    }
    bool take_internal;
    if (next_internal >= q || internal_slot < 0) {
      take_internal = false;
    } else if (next_pendant >= n || pendant_slot < 0) {
      take_internal = true;
    } else {
      take_internal = inst.weight(next_internal) * prices[internal_slot] >
                      inst.weight(next_pendant) * prices[pendant_slot];
    }
    if (take_internal) {
      assign(next_internal++, internal_slot);
    } else {
      assign(next_pendant++, pendant_slot);
    }
  }

  SolveReport report{std::move(x), 0.0, static_cast<std::uint64_t>(n), 0, 0.0, false};
  report.value = vwwi_assignment(inst, report.assignment);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace wiener
