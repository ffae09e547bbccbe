#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_support.hpp"
#include "wiener/relaxation.hpp"
#include "wiener/simplex.hpp"

using wiener::SimplexSolver;

TEST_CASE("small transportation program with a known optimum") {
  // Supplies (1, 1), demands (1, 1); maximize 3 x00 + x01 + x10 + 2 x11.
  SimplexSolver lp(4);
  lp.add_row({1, 1, 0, 0}, 1.0);
  lp.add_row({0, 0, 1, 1}, 1.0);
  lp.add_row({1, 0, 1, 0}, 1.0);
  lp.add_row({0, 1, 0, 1}, 1.0);  // redundant with the rest
  REQUIRE(lp.prepare());
  std::vector<double> x;
  const double value = lp.maximize({3, 1, 1, 2}, &x);
  CHECK(value == Catch::Approx(5.0).epsilon(1e-12));
  CHECK(x[0] == Catch::Approx(1.0));
  CHECK(x[3] == Catch::Approx(1.0));
}

TEST_CASE("objectives can be swapped on a kept basis") {
  SimplexSolver lp(4);
  lp.add_row({1, 1, 0, 0}, 1.0);
  lp.add_row({0, 0, 1, 1}, 1.0);
  lp.add_row({1, 0, 1, 0}, 1.0);
  REQUIRE(lp.prepare());
  CHECK(lp.maximize({3, 1, 1, 2}) == Catch::Approx(5.0));
  CHECK(lp.maximize({1, 3, 2, 1}) == Catch::Approx(5.0));
  CHECK(lp.maximize({0, 0, 0, 0}) == Catch::Approx(0.0));
}

TEST_CASE("inconsistent rows are detected") {
  SimplexSolver lp(2);
  lp.add_row({1, 1}, 1.0);
  lp.add_row({1, 1}, 2.0);
  CHECK_FALSE(lp.prepare());
}

TEST_CASE("negative right-hand sides are normalized") {
  SimplexSolver lp(2);
  lp.add_row({-1, -1}, -3.0);
  REQUIRE(lp.prepare());
  CHECK(lp.maximize({1, 2}) == Catch::Approx(6.0));
}

TEST_CASE("linear maximization over the assignment polytope dominates every vertex") {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 10; ++round) {
    const wiener::Instance inst = test_support::random_small_instance(rng, 8);
    wiener::RelaxationSolver relax(inst, std::vector<int>(inst.n(), -1));
    REQUIRE(relax.feasible());
    // Probe with the gradient objective used by the bound machinery: a
    // price-weighted linear function from a random feasible point.
    wiener::RelaxationOptions options;
    options.max_iterations = 1;
    relax.set_start(test_support::random_feasible_assignment(inst, rng));
    const wiener::RelaxationResult result = relax.solve(options);
    double best_vertex = 0.0;
    wiener::for_each_feasible_assignment(
        inst, false, [&](const std::vector<int>& perm, const std::vector<int>& pend) {
          const auto x = wiener::assignment_from_layout(inst, perm, pend);
          best_vertex = std::max(best_vertex, wiener::qap_objective(inst, x));
        });
    CHECK(result.bound >= best_vertex - 1e-9 * (1.0 + best_vertex));
  }
}
