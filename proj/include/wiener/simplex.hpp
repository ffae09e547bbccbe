#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "wiener/errors.hpp"

namespace wiener {

// Dense two-phase primal simplex for small equality-form programs:
//   maximize c^T x  subject to  A x = b,  x >= 0.
// The basis survives between maximize() calls, so a sequence of objectives
// over one fixed feasible set (the linearized subproblems of the
// conditional-gradient loop) re-optimizes in a handful of pivots.
class SimplexSolver {
public:
  explicit SimplexSolver(int num_vars) : num_vars_(num_vars) {}

  void add_row(std::vector<double> coefficients, double rhs) {
    if (static_cast<int>(coefficients.size()) != num_vars_) {
      fail(errc::bad_input, "constraint row has wrong length");
    }
    if (rhs < 0.0) {
      for (double& c : coefficients) c = -c;
      rhs = -rhs;
    }
    coefficients.push_back(rhs);
    rows_.push_back(std::move(coefficients));
  }

  int num_vars() const { return num_vars_; }
  bool prepared() const { return prepared_; }

  // Phase 1: find a feasible basis, dropping redundant rows. Returns false
  // when the constraints are inconsistent.
  bool prepare() {
    const int m = static_cast<int>(rows_.size());
    basis_.assign(m, -1);  // -1 marks an artificial basic variable
    std::vector<double> obj(num_vars_ + 1, 0.0);
    for (const auto& row : rows_) {
      for (int j = 0; j <= num_vars_; ++j) obj[j] += row[j];
    }
    run_pivots(obj, /*artificial_priority=*/true);
    if (obj[num_vars_] > feasibility_tol_) {
      prepared_ = false;
      return false;
    }
    // Pivot lingering zero-level artificials out; rows with no structural
    // support are redundant and get removed.
    for (int r = static_cast<int>(rows_.size()) - 1; r >= 0; --r) {
      if (basis_[r] != -1) continue;
      int j = -1;
      for (int col = 0; col < num_vars_; ++col) {
        if (std::abs(rows_[r][col]) > pivot_tol_) {
          j = col;
          break;
        }
      }
      if (j >= 0) {
        pivot(r, j, obj);
      } else {
        rows_.erase(rows_.begin() + r);
        basis_.erase(basis_.begin() + r);
      }
    }
    prepared_ = true;
    return true;
  }

  // Phase 2 from the current basis. Writes the optimum point into *point
  // when given and returns the objective value.
  double maximize(const std::vector<double>& objective, std::vector<double>* point = nullptr) {
    if (!prepared_) fail(errc::bad_input, "maximize() before a successful prepare()");
    if (static_cast<int>(objective.size()) != num_vars_) {
      fail(errc::bad_input, "objective has wrong length");
    }
    std::vector<double> obj(num_vars_ + 1, 0.0);
    for (int j = 0; j < num_vars_; ++j) obj[j] = objective[j];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const double cb = objective[basis_[r]];
      if (cb == 0.0) continue;
      for (int j = 0; j <= num_vars_; ++j) obj[j] -= cb * rows_[r][j];
    }
    run_pivots(obj, /*artificial_priority=*/false);
    if (point) *point = extract_point();
    double value = 0.0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      value += objective[basis_[r]] * rows_[r][num_vars_];
    }
    return value;
  }

  std::vector<double> feasible_point() const {
    if (!prepared_) fail(errc::bad_input, "no feasible point before prepare()");
    return extract_point();
  }

private:
  std::vector<double> extract_point() const {
    std::vector<double> x(num_vars_, 0.0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] >= 0) x[basis_[r]] = rows_[r][num_vars_];
    }
    return x;
  }

  // Pivots until no reduced cost exceeds the tolerance. `obj` is the reduced
  // cost row (maximization: entering requires obj[j] > 0). With
  // artificial_priority, ratio-test ties prefer kicking artificials out.
  void run_pivots(std::vector<double>& obj, bool artificial_priority) {
    int stalled = 0;
    for (long iteration = 0; iteration < 200000; ++iteration) {
      const bool bland = stalled > 64;
      int enter = -1;
      double best = cost_tol_;
      for (int j = 0; j < num_vars_; ++j) {
        if (obj[j] > best) {
          enter = j;
          if (bland) break;
          best = obj[j];
        }
      }
      if (enter < 0) return;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const double a = rows_[r][enter];
        if (a <= pivot_tol_) continue;
        const double ratio = rows_[r][num_vars_] / a;
        bool better = ratio < best_ratio - ratio_tie_tol_;
        if (!better && ratio < best_ratio + ratio_tie_tol_ && leave >= 0) {
          if (artificial_priority && basis_[r] == -1 && basis_[leave] != -1) {
            better = true;
          } else if ((basis_[r] == -1) == (basis_[leave] == -1) && basis_[r] < basis_[leave]) {
            better = true;
          }
        }
        if (better) {
          leave = static_cast<int>(r);
          best_ratio = std::min(best_ratio, ratio);
        }
      }
      if (leave < 0) fail(errc::bad_input, "linear subproblem unbounded");
      stalled = best_ratio < ratio_tie_tol_ ? stalled + 1 : 0;
      pivot(leave, enter, obj);
    }
    fail(errc::bad_input, "simplex iteration cap exceeded");
  }

  void pivot(int r, int j, std::vector<double>& obj) {
    const double piv = rows_[r][j];
    for (int col = 0; col <= num_vars_; ++col) rows_[r][col] /= piv;
    rows_[r][j] = 1.0;
    for (std::size_t rr = 0; rr < rows_.size(); ++rr) {
      if (static_cast<int>(rr) == r) continue;
      const double a = rows_[rr][j];
      if (a == 0.0) continue;
      for (int col = 0; col <= num_vars_; ++col) rows_[rr][col] -= a * rows_[r][col];
      rows_[rr][j] = 0.0;
    }
    const double a = obj[j];
    if (a != 0.0) {
      for (int col = 0; col <= num_vars_; ++col) obj[col] -= a * rows_[r][col];
      obj[j] = 0.0;
    }
    basis_[r] = j;
  }

  int num_vars_;
  std::vector<std::vector<double>> rows_;  // tableau, last column is the rhs
  std::vector<int> basis_;
  bool prepared_ = false;

  static constexpr double pivot_tol_ = 1e-9;
  static constexpr double cost_tol_ = 1e-9;
  static constexpr double ratio_tie_tol_ = 1e-9;
  static constexpr double feasibility_tol_ = 1e-7;
};

}  // namespace wiener
