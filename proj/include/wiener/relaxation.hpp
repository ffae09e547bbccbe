#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "wiener/assignment.hpp"
#include "wiener/errors.hpp"
#include "wiener/instance.hpp"
#include "wiener/simplex.hpp"

namespace wiener {

struct RelaxationOptions {
  int max_iterations = 200;
  double relative_gap_tol = 1e-6;
  // Stop as soon as the certified bound drops to the cutoff; callers prune on it.
  double cutoff = -std::numeric_limits<double>::infinity();
};

struct RelaxationResult {
  bool feasible = true;
  double bound = 0.0;  // certified upper bound on the quadratic objective
  double value = 0.0;  // best objective value reached by an iterate
  double gap = 0.0;
  int iterations = 0;
};

// Maximizes the concave quadratic assignment objective over the continuous
// relaxation (rows sum to one, one internal vertex per position, degree
// balance, box constraints) with some rows pinned to a position. Conditional
// gradient with away steps and exact line search; the linearization value
// f(x) + <grad, s - x> over-estimates the relaxation optimum at every
// iterate, so the reported bound is valid regardless of convergence.
class RelaxationSolver {
public:
  // pinned_col[i] is the 0-based position of vertex i, or -1 when free.
  RelaxationSolver(const Instance& inst, std::vector<int> pinned_col)
      : inst_(inst), pinned_col_(std::move(pinned_col)), lp_(0) {
    const int n = inst_.n();
    const int q = inst_.q();
    internal_pinned_at_.assign(q, -1);
    for (int i = 0; i < n; ++i) {
      const int k = pinned_col_[i];
      if (k < 0) continue;
      if (k >= q) fail(errc::inconsistent_partial, "pinned position out of range");
      if (inst_.is_internal(i)) {
        if (internal_pinned_at_[k] >= 0) {
          fail(errc::inconsistent_partial, "two internal vertices pinned to one position");
        }
        internal_pinned_at_[k] = i;
      }
    }

    cell_to_var_.assign(static_cast<std::size_t>(n) * q, -1);
    for (int i = 0; i < n; ++i) {
      if (pinned_col_[i] >= 0) continue;
      for (int k = 0; k < q; ++k) {
        if (inst_.is_internal(i) && internal_pinned_at_[k] >= 0) continue;
        cell_to_var_[static_cast<std::size_t>(i) * q + k] = static_cast<int>(var_cells_.size());
        var_cells_.emplace_back(i, k);
      }
    }

    lp_ = SimplexSolver(static_cast<int>(var_cells_.size()));
    // One assignment per free row.
    for (int i = 0; i < n; ++i) {
      if (pinned_col_[i] >= 0) continue;
      std::vector<double> row(var_cells_.size(), 0.0);
      for (int k = 0; k < q; ++k) {
        const int var = cell_to_var_[static_cast<std::size_t>(i) * q + k];
        if (var >= 0) row[var] = 1.0;
      }
      lp_.add_row(std::move(row), 1.0);
    }
    // One internal vertex per open position.
    for (int k = 0; k < q; ++k) {
      if (internal_pinned_at_[k] >= 0) continue;
      std::vector<double> row(var_cells_.size(), 0.0);
      bool any = false;
      for (int i = 0; i < q; ++i) {
        const int var = cell_to_var_[static_cast<std::size_t>(i) * q + k];
        if (var >= 0) {
          row[var] = 1.0;
          any = true;
        }
      }
      if (any) {
        lp_.add_row(std::move(row), 1.0);
      } else {
        feasible_ = false;  // open position with no free internal vertex left
      }
    }
    // Degree balance per position, net of the pinned contribution.
    for (int k = 0; k < q; ++k) {
      std::vector<double> row(var_cells_.size(), 0.0);
      double rhs = degree_balance_rhs(q, k);
      for (int i = 0; i < n; ++i) {
        if (pinned_col_[i] == k) rhs -= inst_.degree(i) - 2;
      }
      for (int i = 0; i < n; ++i) {
        const int var = cell_to_var_[static_cast<std::size_t>(i) * q + k];
        if (var >= 0) row[var] = inst_.degree(i) - 2;
      }
      lp_.add_row(std::move(row), rhs);
    }
    if (feasible_) feasible_ = lp_.prepare();
  }

  bool feasible() const { return feasible_; }
  int num_free_vars() const { return static_cast<int>(var_cells_.size()); }

  // Optional warm start; x must satisfy the constraints including the pins.
  void set_start(const AssignmentMatrix& x) {
    start_.assign(var_cells_.size(), 0.0);
    for (std::size_t v = 0; v < var_cells_.size(); ++v) {
      start_[v] = x(var_cells_[v].first, var_cells_[v].second);
    }
    have_start_ = true;
  }

  RelaxationResult solve(const RelaxationOptions& options = {}) {
    RelaxationResult result;
    if (!feasible_) {
      result.feasible = false;
      return result;
    }
    const int q = inst_.q();
    std::vector<double> x = have_start_ ? start_ : lp_.feasible_point();

    // Convex decomposition of the iterate for the away direction.
    std::vector<std::vector<double>> atoms{x};
    std::vector<double> lambdas{1.0};

    std::vector<double> base_weights(q, 0.0);
    for (int i = 0; i < inst_.n(); ++i) {
      if (pinned_col_[i] >= 0) base_weights[pinned_col_[i]] += inst_.weight(i);
    }

    double best_bound = std::numeric_limits<double>::infinity();
    std::vector<double> gradient(var_cells_.size(), 0.0);
    std::vector<double> vertex;
    std::vector<double> direction(var_cells_.size(), 0.0);
    std::vector<double> direction_weights(q, 0.0);

    for (int iteration = 0; iteration < options.max_iterations; ++iteration) {
      result.iterations = iteration + 1;
      std::vector<double> w = base_weights;
      for (std::size_t v = 0; v < var_cells_.size(); ++v) {
        w[var_cells_[v].second] += inst_.weight(var_cells_[v].first) * x[v];
      }
      const double f = qap_objective_from_weights(w);
      result.value = std::max(result.value, f);
      const std::vector<double> prices = position_prices_of(w);
      for (std::size_t v = 0; v < var_cells_.size(); ++v) {
        gradient[v] = inst_.weight(var_cells_[v].first) * prices[var_cells_[v].second];
      }

      const double lp_value = lp_.maximize(gradient, &vertex);
      double g_dot_x = 0.0;
      for (std::size_t v = 0; v < var_cells_.size(); ++v) g_dot_x += gradient[v] * x[v];
      const double fw_gap = lp_value - g_dot_x;
      // Round-off in the linear subproblem must not deflate the certificate.
      const double slack = 1e-9 * (1.0 + std::abs(f) + std::abs(fw_gap));
      best_bound = std::min(best_bound, f + fw_gap + slack);

      if (fw_gap <= options.relative_gap_tol * std::max(1.0, std::abs(best_bound))) break;
      if (best_bound <= options.cutoff) break;

      // Away atom: the active vertex the gradient likes least.
      std::size_t away = 0;
      double away_score = std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < atoms.size(); ++a) {
        double s = 0.0;
        for (std::size_t v = 0; v < var_cells_.size(); ++v) s += gradient[v] * atoms[a][v];
        if (s < away_score) {
          away_score = s;
          away = a;
        }
      }
      const double away_gap = g_dot_x - away_score;

      bool fw_step = fw_gap >= away_gap || atoms.size() == 1;
      double gamma_max;
      if (fw_step) {
        for (std::size_t v = 0; v < var_cells_.size(); ++v) direction[v] = vertex[v] - x[v];
        gamma_max = 1.0;
      } else {
        for (std::size_t v = 0; v < var_cells_.size(); ++v) direction[v] = x[v] - atoms[away][v];
        const double lam = lambdas[away];
        if (lam >= 1.0 - 1e-12) break;
        gamma_max = lam / (1.0 - lam);
      }

      std::fill(direction_weights.begin(), direction_weights.end(), 0.0);
      for (std::size_t v = 0; v < var_cells_.size(); ++v) {
        direction_weights[var_cells_[v].second] += inst_.weight(var_cells_[v].first) * direction[v];
      }
      double g_dot_d = 0.0;
      for (std::size_t v = 0; v < var_cells_.size(); ++v) g_dot_d += gradient[v] * direction[v];
      const double curvature = 2.0 * qap_objective_from_weights(direction_weights);

      double gamma = gamma_max;
      if (curvature < -1e-15) gamma = std::min(gamma_max, g_dot_d / -curvature);
      if (gamma <= 1e-14 || g_dot_d <= 0.0) break;

      for (std::size_t v = 0; v < var_cells_.size(); ++v) x[v] += gamma * direction[v];
      if (fw_step) {
        for (double& l : lambdas) l *= 1.0 - gamma;
        merge_atom(atoms, lambdas, vertex, gamma);
      } else {
        for (double& l : lambdas) l *= 1.0 + gamma;
        lambdas[away] -= gamma;
        if (lambdas[away] <= 1e-12) {
          atoms.erase(atoms.begin() + away);
          lambdas.erase(lambdas.begin() + away);
        }
      }
    }

    if (best_bound == std::numeric_limits<double>::infinity()) {
      // No iterations ran (e.g. the polytope is a single pinned point).
      std::vector<double> w = base_weights;
      best_bound = qap_objective_from_weights(w);
      result.value = best_bound;
    }
    result.bound = best_bound;
    result.gap = result.bound - result.value;
    final_x_ = std::move(x);
    return result;
  }

  // Final iterate as a full fractional matrix, pinned rows included.
  AssignmentMatrix point() const {
    AssignmentMatrix x(inst_.n(), inst_.q(), AssignmentMode::fractional);
    for (int i = 0; i < inst_.n(); ++i) {
      if (pinned_col_[i] >= 0) x(i, pinned_col_[i]) = 1.0;
    }
    for (std::size_t v = 0; v < var_cells_.size(); ++v) {
      x(var_cells_[v].first, var_cells_[v].second) = final_x_[v];
    }
    return x;
  }

private:
  static void merge_atom(std::vector<std::vector<double>>& atoms, std::vector<double>& lambdas,
                         const std::vector<double>& vertex, double gamma) {
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      double diff = 0.0;
      for (std::size_t v = 0; v < vertex.size(); ++v) {
        diff = std::max(diff, std::abs(atoms[a][v] - vertex[v]));
      }
      if (diff <= 1e-10) {
        lambdas[a] += gamma;
        return;
      }
    }
    atoms.push_back(vertex);
    lambdas.push_back(gamma);
  }

  const Instance& inst_;
  std::vector<int> pinned_col_;
  std::vector<int> internal_pinned_at_;
  std::vector<int> cell_to_var_;
  std::vector<std::pair<int, int>> var_cells_;
  SimplexSolver lp_;
  bool feasible_ = true;
  bool have_start_ = false;
  std::vector<double> start_;
  std::vector<double> final_x_;
};

}  // namespace wiener
