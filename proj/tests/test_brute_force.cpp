#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_support.hpp"
#include "wiener/brute_force.hpp"
#include "wiener/instance.hpp"

using wiener::brute_force_caterpillars;
using wiener::brute_force_trees;
using wiener::Instance;

TEST_CASE("exhaustive optimum of the 2-position split instance is 126") {
  const Instance inst = Instance::validate({1, 1, 4, 3, 2, 1}, {3, 3, 1, 1, 1, 1});
  const auto report = brute_force_caterpillars(inst);
  CHECK(report.value == 126.0);
  CHECK(report.proven_optimal);
  const auto w = wiener::position_weights_of(inst, report.assignment);
  CHECK(w[0] == 6.0);
  CHECK(w[1] == 6.0);
}

TEST_CASE("balanced split of unit pendants over two zero-weight hubs") {
  // Two internal vertices of degree 4, six unit pendants in a forced 3/3
  // split; all splits tie, and an independent distance-based enumeration over
  // the 20 subsets agrees.
  const Instance inst =
      Instance::validate({0, 0, 1, 1, 1, 1, 1, 1}, {4, 4, 1, 1, 1, 1, 1, 1});
  double best_by_tree = -1.0;
  for (int mask = 0; mask < 64; ++mask) {
    if (__builtin_popcount(mask) != 3) continue;
    std::vector<std::pair<int, int>> edges{{0, 1}};
    for (int j = 0; j < 6; ++j) edges.emplace_back(mask >> j & 1, 2 + j);
    best_by_tree = std::max(best_by_tree, vwwi_tree(wiener::WeightedTree(inst.weights(), edges)));
  }
  CHECK(best_by_tree == 39.0);
  CHECK(brute_force_caterpillars(inst).value == 39.0);
}

TEST_CASE("a star has a unique assignment") {
  const Instance star = Instance::validate({2, 9, 4, 1}, {3, 1, 1, 1});
  const auto report = brute_force_caterpillars(star);
  CHECK(report.nodes_explored == 1);
  CHECK(report.value == vwwi_assignment(star, report.assignment));
}

TEST_CASE("single-edge instances are handled directly") {
  const Instance edge = Instance::validate({3, 5}, {1, 1});
  CHECK(brute_force_caterpillars(edge).value == 15.0);
  CHECK(brute_force_trees(edge) == 15.0);
}

TEST_CASE("oversized search spaces are refused") {
  std::vector<double> w(30, 1.0);
  std::vector<int> d(30, 2);
  d[28] = d[29] = 1;
  const Instance path = Instance::validate(w, d);
  CHECK_THROWS_AS(brute_force_caterpillars(path), wiener::Error);
  CHECK_THROWS_AS(brute_force_trees(path), wiener::Error);
}

TEST_CASE("trees with only path shapes match the caterpillar enumeration") {
  const Instance inst = Instance::validate({3, 2, 1, 5, 4}, {2, 2, 2, 1, 1});
  CHECK(brute_force_trees(inst) ==
        Catch::Approx(brute_force_caterpillars(inst).value).epsilon(1e-12));
}

TEST_CASE("tree optimum equals caterpillar optimum on random instances") {
  std::mt19937_64 rng(37);
  for (int round = 0; round < 12; ++round) {
    const Instance inst = test_support::random_small_instance(rng, 8, rng() % 2 == 0);
    CHECK(brute_force_trees(inst) ==
          Catch::Approx(brute_force_caterpillars(inst).value).epsilon(1e-9));
  }
}

TEST_CASE("tree optimum equals caterpillar optimum with zero weights present") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 6; ++round) {
    Instance base = test_support::random_small_instance(rng, 8);
    std::vector<double> weights = base.weights();
    for (double& w : weights) {
      if (rng() % 3 == 0) w = 0.0;
    }
    const Instance inst = Instance::validate(weights, base.degrees());
    CHECK(brute_force_trees(inst) ==
          Catch::Approx(brute_force_caterpillars(inst).value).margin(1e-9));
  }
}

TEST_CASE("enumeration visits each labeled layout once") {
  // q=2, d=(3,3): internal orderings up to reversal = 1, pendant splits
  // C(4,2) = 6.
  const Instance inst = Instance::validate({1, 1, 4, 3, 2, 1}, {3, 3, 1, 1, 1, 1});
  int leaves = 0;
  wiener::for_each_feasible_assignment(inst, true,
                                       [&](const auto&, const auto&) { ++leaves; });
  CHECK(leaves == 6);
  int both = 0;
  wiener::for_each_feasible_assignment(inst, false,
                                       [&](const auto&, const auto&) { ++both; });
  CHECK(both == 12);
}
