#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "wiener/assignment.hpp"
#include "wiener/brute_force.hpp"
#include "wiener/caterpillar.hpp"
#include "wiener/instance.hpp"
#include "wiener/random_instance.hpp"
#include "wiener/weighted_tree.hpp"

namespace test_support {

inline wiener::Instance random_small_instance(std::mt19937_64& rng, int max_n = 10,
                                              bool monotone = true) {
  const int n = 4 + static_cast<int>(rng() % (max_n - 3));
  return wiener::random_instance(n, rng(), monotone);
}

inline wiener::WeightedTree make_path(const std::vector<double>& weights) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < static_cast<int>(weights.size()); ++v) edges.emplace_back(v, v + 1);
  return wiener::WeightedTree(weights, edges);
}

inline wiener::WeightedTree make_star(const std::vector<double>& weights) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < static_cast<int>(weights.size()); ++v) edges.emplace_back(0, v);
  return wiener::WeightedTree(weights, edges);
}

// Random caterpillar with shuffled vertex ids: backbone length q in [1, 6],
// pendant counts keeping every internal vertex internal.
inline wiener::Caterpillar random_caterpillar(std::mt19937_64& rng, int max_n,
                                              bool zero_weights = false) {
  std::uniform_int_distribution<int> qd(1, 6);
  const int q = qd(rng);
  std::vector<int> counts(q, 0);
  for (int k = 0; k < q; ++k) {
    const int least = q == 1 ? 2 : (k == 0 || k == q - 1 ? 1 : 0);
    counts[k] = least + static_cast<int>(rng() % 3);
  }
  int n = q + std::accumulate(counts.begin(), counts.end(), 0);
  while (n < max_n && rng() % 2 == 0) {
    ++counts[rng() % q];
    ++n;
  }
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<double> weights(n);
  std::uniform_real_distribution<double> wd(0.0, 5.0);
  for (double& w : weights) w = zero_weights ? 0.0 : wd(rng);
  int next = 0;
  std::vector<int> backbone(q);
  for (int k = 0; k < q; ++k) backbone[k] = ids[next++];
  std::vector<std::vector<int>> pendants(q);
  for (int k = 0; k < q; ++k) {
    for (int t = 0; t < counts[k]; ++t) pendants[k].push_back(ids[next++]);
  }
  return wiener::Caterpillar(weights, backbone, pendants);
}

// Random feasible binary assignment: a random internal arrangement and a
// random deal of the pendants into the implied exact per-position counts.
inline wiener::AssignmentMatrix random_feasible_assignment(const wiener::Instance& inst,
                                                           std::mt19937_64& rng) {
  const int q = inst.q();
  std::vector<int> perm(q);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> pendants(inst.pendant_count());
  std::iota(pendants.begin(), pendants.end(), 0);
  std::shuffle(pendants.begin(), pendants.end(), rng);
  wiener::AssignmentMatrix x(inst.n(), q, wiener::AssignmentMode::binary);
  for (int k = 0; k < q; ++k) x(perm[k], k) = 1.0;
  int at = 0;
  for (int k = 0; k < q; ++k) {
    const int m = wiener::pendant_capacity(inst, perm[k], q, k);
    for (int t = 0; t < m; ++t) x(q + pendants[at++], k) = 1.0;
  }
  return x;
}

inline bool is_v_shaped(const std::vector<double>& a) {
  std::size_t j = 0;
  while (j + 1 < a.size() && a[j] >= a[j + 1]) ++j;
  for (; j + 1 < a.size(); ++j) {
    if (a[j] > a[j + 1]) return false;
  }
  return true;
}

}  // namespace test_support
