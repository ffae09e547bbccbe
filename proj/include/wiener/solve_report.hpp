#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wiener/assignment.hpp"
#include "wiener/instance.hpp"

namespace wiener {

struct SolveReport {
  AssignmentMatrix assignment;
  double value = 0.0;
  std::uint64_t nodes_explored = 0;
  std::uint64_t nodes_pruned = 0;
  double wall_seconds = 0.0;
  bool proven_optimal = false;
};

// Edge list of the solved tree in canonical vertex ids. The q = 0 instance
// (a single edge) has an empty assignment and is special-cased.
inline std::vector<std::pair<int, int>> solution_edges_canonical(const Instance& inst,
                                                                 const AssignmentMatrix& x) {
  if (inst.q() == 0) return {{0, 1}};
  return caterpillar_from_assignment(inst, x).to_tree().edges();
}

// Same edges mapped back to the caller's original vertex order.
inline std::vector<std::pair<int, int>> solution_edges_original(const Instance& inst,
                                                                const AssignmentMatrix& x) {
  std::vector<std::pair<int, int>> edges = solution_edges_canonical(inst, x);
  for (auto& [u, v] : edges) {
    u = inst.original_index(u);
    v = inst.original_index(v);
  }
  return edges;
}

}  // namespace wiener
