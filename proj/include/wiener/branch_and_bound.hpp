#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include "wiener/bounds.hpp"
#include "wiener/greedy.hpp"
#include "wiener/instance.hpp"
#include "wiener/relaxation.hpp"
#include "wiener/solve_report.hpp"

namespace wiener {

struct SolveLimits {
  double time_limit_seconds = std::numeric_limits<double>::infinity();
  std::uint64_t node_limit = std::numeric_limits<std::uint64_t>::max();
  int threads = 1;
};

namespace detail {

// Best solution found so far. Reads go through the atomic mirror so pruning
// does not take the lock; updates only ever raise the value.
struct Incumbent {
  explicit Incumbent(AssignmentMatrix x, double v) : value(v), best(std::move(x)) {}

  std::atomic<double> value;
  std::mutex mutex;
  AssignmentMatrix best;

  template <typename Materialize>
  void offer(double v, Materialize&& materialize) {
    if (v <= value.load(std::memory_order_relaxed)) return;
    std::lock_guard<std::mutex> lock(mutex);
    if (v > value.load(std::memory_order_relaxed)) {
      best = materialize();
      value.store(v, std::memory_order_relaxed);
    }
  }
};

// Depth-first search over V-shaped assignments: vertices are taken in
// canonical (descending weight) order and branched onto the leftmost or
// rightmost position still available to them, so vacant internal positions
// always form a contiguous middle range. A pendant is branched as soon as
// spare pendant capacity exists on both sides of that range (or no internal
// vertices remain); otherwise the next internal vertex is branched.
class BnbSearch {
public:
  BnbSearch(const Instance& inst, Incumbent& incumbent,
            std::chrono::steady_clock::time_point deadline, std::uint64_t node_limit,
            std::atomic<std::uint64_t>& node_count, std::atomic<std::uint64_t>& prune_count,
            std::atomic<bool>& interrupted)
      : inst_(inst),
        incumbent_(incumbent),
        deadline_(deadline),
        node_limit_(node_limit),
        node_count_(node_count),
        prune_count_(prune_count),
        interrupted_(interrupted) {
    const int q = inst.q();
    pinned_col_.assign(inst.n(), -1);
    internal_at_.assign(q, -1);
    pendants_at_.assign(q, 0);
    weight_at_.assign(q, 0.0);
    next_internal_ = 0;
    next_pendant_ = q;
    middle_lo_ = 0;
    middle_hi_ = q - 1;
  }

  struct Branch {
    int vertex = -1;
    std::vector<int> columns;
  };

  bool all_assigned() const { return next_internal_ >= inst_.q() && next_pendant_ >= inst_.n(); }

  Branch next_branch() const {
    const int q = inst_.q();
    Branch branch;
    const bool internals_left = next_internal_ < q;
    const bool pendants_left = next_pendant_ < inst_.n();
    int spare_left = -1, spare_right = -1;
    for (int k = 0; k < q; ++k) {
      if (internal_at_[k] >= 0 &&
          pendants_at_[k] < pendant_capacity(inst_, internal_at_[k], q, k)) {
        if (spare_left < 0) spare_left = k;
        spare_right = k;
      }
    }
    bool pendant_turn = false;
    if (pendants_left) {
      if (!internals_left) {
        pendant_turn = true;
      } else {
        // Spare capacity on both sides of the vacant middle range.
        pendant_turn = spare_left >= 0 && spare_left < middle_lo_ && spare_right > middle_hi_;
      }
    }
    if (pendant_turn) {
      branch.vertex = next_pendant_;
      branch.columns.push_back(spare_left);
      if (spare_right != spare_left) branch.columns.push_back(spare_right);
    } else {
      branch.vertex = next_internal_;
      branch.columns.push_back(middle_lo_);
      if (middle_hi_ != middle_lo_) branch.columns.push_back(middle_hi_);
    }
    return branch;
  }

  void apply(int vertex, int k) {
    pinned_col_[vertex] = k;
    weight_at_[k] += inst_.weight(vertex);
    if (inst_.is_internal(vertex)) {
      internal_at_[k] = vertex;
      ++next_internal_;
      if (k == middle_lo_) ++middle_lo_;
      if (k == middle_hi_) --middle_hi_;
    } else {
      ++pendants_at_[k];
      ++next_pendant_;
    }
  }

  void undo(int vertex, int k) {
    pinned_col_[vertex] = -1;
    weight_at_[k] -= inst_.weight(vertex);
    if (inst_.is_internal(vertex)) {
      internal_at_[k] = -1;
      --next_internal_;
      if (k == middle_lo_ - 1) --middle_lo_;
      if (k == middle_hi_ + 1) ++middle_hi_;
    } else {
      --pendants_at_[k];
      --next_pendant_;
    }
  }

  const std::vector<int>& pins() const { return pinned_col_; }

  void restore(const std::vector<std::pair<int, int>>& pin_list) {
    for (const auto& [vertex, k] : pin_list) apply(vertex, k);
  }

  void search(double parent_bound, bool symmetric_root) {
    if (stopped()) return;
    node_count_.fetch_add(1, std::memory_order_relaxed);
    if (all_assigned()) {
      const double value = qap_objective_from_weights(weight_at_) + inst_.assignment_constant();
      incumbent_.offer(value, [&]() { return materialize(); });
      return;
    }
    if (parent_bound <= prune_threshold()) {
      // Admitted under an older incumbent; the carried bound now prunes it.
      prune_count_.fetch_add(1, std::memory_order_relaxed);
      return;
    }
    Branch branch = next_branch();
    if (symmetric_root) branch.columns.resize(1);  // mirror image explored implicitly
    order_by_price(branch.columns);
    for (int k : branch.columns) {
      if (stopped()) return;
      apply(branch.vertex, k);
      if (all_assigned()) {
        search(parent_bound, false);
      } else {
        const double bound = node_bound(parent_bound);
        if (bound > prune_threshold()) {
          search(bound, false);
        } else {
          prune_count_.fetch_add(1, std::memory_order_relaxed);
        }
      }
      undo(branch.vertex, k);
    }
  }

  double node_bound(double parent_bound) {
    const double threshold = prune_threshold();
    if (parent_bound <= threshold) return parent_bound;
    RelaxationSolver solver(inst_, pinned_col_);
    if (!solver.feasible()) return -std::numeric_limits<double>::infinity();
    solver.set_start(v_shaped_completion());
    RelaxationOptions options;
    options.cutoff = threshold - inst_.assignment_constant();
    RelaxationResult result = solver.solve(options);
    return std::min(parent_bound, result.bound + inst_.assignment_constant());
  }

  double prune_threshold() const {
    const double inc = incumbent_.value.load(std::memory_order_relaxed);
    return inc + 1e-12 * std::abs(inc);
  }

  // Feasible binary completion of the current pins, used to start the
  // relaxation: remaining vertices alternate between the outermost openings.
  AssignmentMatrix v_shaped_completion() const {
    const int q = inst_.q();
    AssignmentMatrix x(inst_.n(), q, AssignmentMode::binary);
    for (int i = 0; i < inst_.n(); ++i) {
      if (pinned_col_[i] >= 0) x(i, pinned_col_[i]) = 1.0;
    }
    std::vector<int> spare(q, 0);
    for (int k = 0; k < q; ++k) {
      if (internal_at_[k] >= 0) {
        spare[k] = pendant_capacity(inst_, internal_at_[k], q, k) - pendants_at_[k];
      }
    }
    int lo = middle_lo_, hi = middle_hi_;
    bool left = true;
    for (int i = next_internal_; i < q; ++i, left = !left) {
      const int k = left ? lo++ : hi--;
      x(i, k) = 1.0;
      spare[k] = pendant_capacity(inst_, i, q, k);
    }
    left = true;
    for (int j = next_pendant_; j < inst_.n(); ++j, left = !left) {
      int k = -1;
      if (left) {
        for (int c = 0; c < q && k < 0; ++c)
          if (spare[c] > 0) k = c;
      }
      if (k < 0) {
        for (int c = q - 1; c >= 0 && k < 0; --c)
          if (spare[c] > 0) k = c;
      }
      x(j, k) = 1.0;
      --spare[k];
    }
    return x;
  }

private:
  AssignmentMatrix materialize() const {
    AssignmentMatrix x(inst_.n(), inst_.q(), AssignmentMode::binary);
    for (int i = 0; i < inst_.n(); ++i) x(i, pinned_col_[i]) = 1.0;
    return x;
  }

  void order_by_price(std::vector<int>& columns) const {
    if (columns.size() < 2) return;
    const int q = inst_.q();
    auto price = [&](int k) {
      double p = 0.0;
      for (int l = 0; l < q; ++l) p += weight_at_[l] * std::abs(k - l);
      return p;
    };
    const double p0 = price(columns[0]);
    const double p1 = price(columns[1]);
    if (p1 > p0) std::swap(columns[0], columns[1]);
  }

  bool stopped() {
    if (interrupted_.load(std::memory_order_relaxed)) return true;
    if (node_count_.load(std::memory_order_relaxed) >= node_limit_ ||
        std::chrono::steady_clock::now() >= deadline_) {
      interrupted_.store(true, std::memory_order_relaxed);
      return true;
    }
    return false;
  }

  const Instance& inst_;
  Incumbent& incumbent_;
  std::chrono::steady_clock::time_point deadline_;
  std::uint64_t node_limit_;
  std::atomic<std::uint64_t>& node_count_;
  std::atomic<std::uint64_t>& prune_count_;
  std::atomic<bool>& interrupted_;

  std::vector<int> pinned_col_;
  std::vector<int> internal_at_;
  std::vector<int> pendants_at_;
  std::vector<double> weight_at_;
  int next_internal_ = 0;
  int next_pendant_ = 0;
  int middle_lo_ = 0;
  int middle_hi_ = 0;
};

}  // namespace detail

// Exact maximization over the class by depth-first branch and bound on
// V-shaped assignments, with the conditional-gradient relaxation bound for
// pruning. Needs weights monotone in degrees; the greedy solution seeds the
// incumbent. Limits turn the result into a best-effort incumbent with
// proven_optimal = false.
inline SolveReport branch_and_bound(const Instance& inst, const SolveLimits& limits = {}) {
  const auto started = std::chrono::steady_clock::now();
  const int q = inst.q();
  if (q <= 1) {
    SolveReport report = detail::direct_report(inst);
    report.proven_optimal = true;
    return report;
  }
  if (!inst.monotone()) {
    fail(errc::non_monotone_weights,
         "branch and bound needs weights monotone in degrees; use brute force instead");
  }

  SolveReport seed = greedy_caterpillar(inst);
  detail::Incumbent incumbent(seed.assignment, seed.value);

  auto deadline = std::chrono::steady_clock::time_point::max();
  if (limits.time_limit_seconds < std::numeric_limits<double>::infinity()) {
    deadline = started + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                             std::chrono::duration<double>(limits.time_limit_seconds));
  }
  std::atomic<std::uint64_t> node_count{0};
  std::atomic<std::uint64_t> prune_count{0};
  std::atomic<bool> interrupted{false};

  double root_bound = std::numeric_limits<double>::infinity();
  if (q >= 4) root_bound = upper_bound(inst).value;

  const int threads = std::max(1, limits.threads);
  if (threads == 1) {
    detail::BnbSearch search(inst, incumbent, deadline, limits.node_limit, node_count,
                             prune_count, interrupted);
    search.search(root_bound, /*symmetric_root=*/true);
  } else {
    // Expand a small frontier breadth-first, then run the subtrees on a
    // worker pool against the shared incumbent. The final value does not
    // depend on the interleaving: pruning only uses certified bounds.
    std::vector<std::vector<std::pair<int, int>>> frontier{{}};
    detail::BnbSearch expander(inst, incumbent, deadline, limits.node_limit, node_count,
                               prune_count, interrupted);
    bool root = true;
    while (static_cast<int>(frontier.size()) < 4 * threads) {
      // Pop the shallowest entry and expand it by one branching step.
      std::vector<std::pair<int, int>> pins = frontier.front();
      frontier.erase(frontier.begin());
      expander.restore(pins);
      if (expander.all_assigned()) {
        node_count.fetch_add(1, std::memory_order_relaxed);
        const double value =
            qap_objective_from_weights(position_weights_of(inst, expander.v_shaped_completion())) +
            inst.assignment_constant();
        incumbent.offer(value, [&]() { return expander.v_shaped_completion(); });
        for (auto it = pins.rbegin(); it != pins.rend(); ++it) expander.undo(it->first, it->second);
        if (frontier.empty()) break;
        continue;
      }
      auto branch = expander.next_branch();
      if (root) {
        branch.columns.resize(1);
        root = false;
      }
      for (int k : branch.columns) {
        auto child = pins;
        child.emplace_back(branch.vertex, k);
        frontier.push_back(std::move(child));
      }
      for (auto it = pins.rbegin(); it != pins.rend(); ++it) expander.undo(it->first, it->second);
      if (frontier.empty()) break;
    }

    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&]() {
        detail::BnbSearch search(inst, incumbent, deadline, limits.node_limit, node_count,
                                 prune_count, interrupted);
        while (true) {
          const std::size_t idx = cursor.fetch_add(1);
          if (idx >= frontier.size()) break;
          search.restore(frontier[idx]);
          search.search(root_bound, false);
          for (auto it = frontier[idx].rbegin(); it != frontier[idx].rend(); ++it) {
            search.undo(it->first, it->second);
          }
        }
      });
    }
    for (auto& worker : pool) worker.join();
  }

  SolveReport report{incumbent.best, incumbent.value.load(), node_count.load(),
                     prune_count.load(), 0.0, !interrupted.load()};
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace wiener
