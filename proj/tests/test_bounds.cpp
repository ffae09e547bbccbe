#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_support.hpp"
#include "wiener/bounds.hpp"
#include "wiener/brute_force.hpp"
#include "wiener/instance.hpp"

using wiener::AssignmentMatrix;
using wiener::brute_force_caterpillars;
using wiener::closed_form_terms;
using wiener::Instance;
using wiener::partial_relaxation_bound;
using wiener::relative_error;
using wiener::rocp_solution_matrix;
using wiener::upper_bound;

namespace {

Instance random_q4_instance(std::mt19937_64& rng, int min_n = 10, int max_n = 30) {
  while (true) {
    const int n = min_n + static_cast<int>(rng() % (max_n - min_n + 1));
    const Instance inst = wiener::random_instance(n, rng(), /*enforce_monotone=*/true);
    if (inst.q() >= 4) return inst;
  }
}

}  // namespace

TEST_CASE("symmetric relaxation matrix of a 5-position instance") {
  const Instance inst =
      Instance::validate({1, 1, 1, 1, 1, 1, 1, 1, 1}, {3, 3, 2, 2, 2, 1, 1, 1, 1});
  const AssignmentMatrix x = rocp_solution_matrix(inst);
  CHECK(x(0, 0) == 0.5);
  CHECK(x(0, 4) == 0.5);
  CHECK(x(1, 0) == 0.5);
  CHECK(x(1, 4) == 0.5);
  CHECK(x(2, 1) == 0.5);
  CHECK(x(3, 1) == 0.5);
  CHECK(x(4, 2) == 1.0);
  // All four pendants sit in the outermost block (d1 + d2 - 2 = 4).
  for (int j = 5; j < 9; ++j) {
    CHECK(x(j, 0) == 0.5);
    CHECK(x(j, 4) == 0.5);
  }
  CHECK(check_feasible(inst, x).feasible);
}

TEST_CASE("relaxation matrix is feasible, symmetric, and column-balanced") {
  std::mt19937_64 rng(47);
  for (int round = 0; round < 60; ++round) {
    const Instance inst = random_q4_instance(rng);
    const AssignmentMatrix x = rocp_solution_matrix(inst);
    CHECK(check_feasible(inst, x).feasible);
    for (int i = 0; i < inst.n(); ++i) {
      for (int k = 0; k < inst.q(); ++k) {
        REQUIRE(x(i, k) == x(i, inst.q() - 1 - k));
      }
    }
    for (int k = 0; k < inst.q(); ++k) {
      double internal_mass = 0.0;
      for (int i = 0; i < inst.q(); ++i) internal_mass += x(i, k);
      REQUIRE(internal_mass == Catch::Approx(1.0).margin(1e-12));
    }
    const auto w = position_weights_of(inst, x);
    for (int k = 0; k < inst.q(); ++k) {
      REQUIRE(w[k] == Catch::Approx(w[inst.q() - 1 - k]).margin(1e-12));
    }
  }
}

TEST_CASE("closed form matches the matrix evaluation") {
  std::mt19937_64 rng(53);
  for (int round = 0; round < 200; ++round) {
    const Instance inst = random_q4_instance(rng, 10, 60);
    const double via_matrix = upper_bound(inst).value;
    const double via_terms = closed_form_terms(inst).value;
    REQUIRE(via_terms == Catch::Approx(via_matrix).epsilon(1e-9));
  }
}

TEST_CASE("closed-form block boundaries and the central aggregate") {
  const Instance flat = Instance::validate({1, 1, 1, 1, 1, 1}, {2, 2, 2, 2, 1, 1});
  CHECK(closed_form_terms(flat).block_boundaries[1] == 2);  // d1 + d2 - 2
  const Instance odd =
      Instance::validate({9, 8, 7, 6, 5, 4, 3, 2, 1}, {3, 3, 2, 2, 2, 1, 1, 1, 1});
  // d_q = 2: the central aggregate is half the last internal weight alone.
  CHECK(closed_form_terms(odd).paired_weights.back() == 0.5 * odd.weight(odd.q() - 1));
}

TEST_CASE("upper bound dominates the exhaustive optimum") {
  std::mt19937_64 rng(59);
  for (int round = 0; round < 25; ++round) {
    const Instance inst = test_support::random_small_instance(rng, 9);
    const double ub = upper_bound(inst).value;
    const double opt = brute_force_caterpillars(inst).value;
    REQUIRE(ub >= opt - 1e-9 * (1.0 + std::abs(opt)));
  }
}

TEST_CASE("bound is positive while the optimum is zero when only one vertex has weight") {
  const Instance inst = Instance::validate({1, 0, 0, 0, 0, 0}, {2, 2, 2, 2, 1, 1});
  CHECK(upper_bound(inst).value > 0.0);
  CHECK(brute_force_caterpillars(inst).value == 0.0);
}

TEST_CASE("tiny backbones fall back to the exact optimum") {
  const Instance star = Instance::validate({2, 3, 4, 5}, {3, 1, 1, 1});
  const auto report = upper_bound(star);
  CHECK(report.method == "exact_small");
  CHECK(report.value == brute_force_caterpillars(star).value);
}

TEST_CASE("relaxation shortcuts require q >= 4 and monotone weights") {
  const Instance small = Instance::validate({1, 1, 1, 1}, {3, 1, 1, 1});
  CHECK_THROWS_AS(rocp_solution_matrix(small), wiener::Error);
  CHECK_THROWS_AS(closed_form_terms(small), wiener::Error);
  const Instance skew =
      Instance::validate({1, 5, 2, 2, 1, 1, 1, 1, 1, 1}, {3, 2, 2, 2, 1, 1, 1, 1, 1, 1});
  REQUIRE_FALSE(skew.monotone());
  CHECK_THROWS_AS(rocp_solution_matrix(skew), wiener::Error);
  CHECK_THROWS_AS(upper_bound(skew), wiener::Error);
}

TEST_CASE("tight paired instances meet the bound exactly") {
  // Internal vertices pair up in weight and degree, pendants pair up in
  // weight: the bound is attained by the mirror rounding.
  const Instance inst = Instance::validate({2, 2, 1, 1, 5, 5, 3, 3, 1, 1},
                                           {3, 3, 3, 3, 1, 1, 1, 1, 1, 1});
  REQUIRE(inst.q() == 4);
  const double ub = upper_bound(inst).value;
  const double opt = brute_force_caterpillars(inst).value;
  CHECK(ub == Catch::Approx(opt).epsilon(1e-9));
}

TEST_CASE("relative error basics") {
  const Instance inst = Instance::validate({2, 2, 1, 1, 5, 5, 3, 3, 1, 1},
                                           {3, 3, 3, 3, 1, 1, 1, 1, 1, 1});
  const double ub = upper_bound(inst).value;
  CHECK(relative_error(inst, ub).value == Catch::Approx(0.0).margin(1e-12));
  CHECK(relative_error(inst, ub / 1.01).value == Catch::Approx(0.01).epsilon(1e-9));
  const auto undefined = relative_error(inst, 0.0);
  CHECK(undefined.infinite);
}

TEST_CASE("empty partial relaxation matches the closed bound") {
  std::mt19937_64 rng(61);
  for (int round = 0; round < 20; ++round) {
    const Instance inst = random_q4_instance(rng);
    const double ub = upper_bound(inst).value;
    const double relaxed = partial_relaxation_bound(inst, {}).value;
    REQUIRE(relaxed == Catch::Approx(ub).epsilon(1e-6));
    REQUIRE(relaxed >= ub - 1e-6 * std::abs(ub));
  }
}

TEST_CASE("fully pinned partials evaluate exactly") {
  std::mt19937_64 rng(67);
  for (int round = 0; round < 10; ++round) {
    const Instance inst = test_support::random_small_instance(rng, 9);
    const AssignmentMatrix x = test_support::random_feasible_assignment(inst, rng);
    std::vector<std::pair<int, int>> pins;
    for (int i = 0; i < inst.n(); ++i)
      for (int k = 0; k < inst.q(); ++k)
        if (x(i, k) == 1.0) pins.emplace_back(i, k);
    const double value = vwwi_assignment(inst, x);
    const double bound = partial_relaxation_bound(inst, pins).value;
    REQUIRE(bound >= value - 1e-9 * (1.0 + std::abs(value)));
    REQUIRE(bound <= value + 1e-6 * (1.0 + std::abs(value)));
  }
}

TEST_CASE("partial bounds dominate every enumerated completion") {
  std::mt19937_64 rng(71);
  for (int round = 0; round < 30; ++round) {
    const Instance inst = test_support::random_small_instance(rng, 9);
    // Pin a random prefix of a random feasible assignment.
    const AssignmentMatrix x = test_support::random_feasible_assignment(inst, rng);
    std::vector<std::pair<int, int>> all_pins;
    for (int i = 0; i < inst.n(); ++i)
      for (int k = 0; k < inst.q(); ++k)
        if (x(i, k) == 1.0) all_pins.emplace_back(i, k);
    std::shuffle(all_pins.begin(), all_pins.end(), rng);
    all_pins.resize(rng() % (all_pins.size() + 1));
    const double bound = partial_relaxation_bound(inst, all_pins).value;
    double best_completion = -1.0;
    wiener::for_each_feasible_assignment(
        inst, false, [&](const std::vector<int>& perm, const std::vector<int>& pend) {
          for (const auto& [i, k] : all_pins) {
            if (i < inst.q()) {
              if (perm[k] != i) return;
            } else if (pend[i - inst.q()] != k) {
              return;
            }
          }
          const auto y = wiener::assignment_from_layout(inst, perm, pend);
          best_completion = std::max(best_completion, vwwi_assignment(inst, y));
        });
    if (best_completion >= 0.0) {
      REQUIRE(bound >= best_completion - 1e-9 * (1.0 + std::abs(best_completion)));
    }
  }
}

TEST_CASE("pinning one more entry never raises the bound") {
  std::mt19937_64 rng(73);
  for (int round = 0; round < 15; ++round) {
    const Instance inst = test_support::random_small_instance(rng, 9);
    const AssignmentMatrix x = test_support::random_feasible_assignment(inst, rng);
    std::vector<std::pair<int, int>> pins;
    double parent = partial_relaxation_bound(inst, pins).value;
    for (int i = 0; i < inst.n(); ++i) {
      for (int k = 0; k < inst.q(); ++k) {
        if (x(i, k) != 1.0) continue;
        pins.emplace_back(i, k);
        const double child = partial_relaxation_bound(inst, pins).value;
        REQUIRE(child <= parent + 1e-6 * (1.0 + std::abs(parent)));
        parent = child;
      }
    }
  }
}

TEST_CASE("inconsistent pins are rejected") {
  const Instance inst = Instance::validate({1, 1, 1, 1, 1, 1, 1}, {4, 3, 1, 1, 1, 1, 1});
  CHECK_THROWS_AS(partial_relaxation_bound(inst, {{0, 0}, {1, 0}}), wiener::Error);
  CHECK_THROWS_AS(partial_relaxation_bound(inst, {{0, 5}}), wiener::Error);
  // Three pendants pinned next to the degree-3 internal vertex overflow its
  // two end-position slots.
  CHECK_THROWS_AS(partial_relaxation_bound(inst, {{1, 0}, {2, 0}, {3, 0}, {4, 0}}),
                  wiener::Error);
}
