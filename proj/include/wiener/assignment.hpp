#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wiener/caterpillar.hpp"
#include "wiener/errors.hpp"
#include "wiener/instance.hpp"

namespace wiener {

enum class AssignmentMode { binary, fractional };

// An n x q matrix x_ik placing vertex i (canonical order) at backbone
// position k. Binary matrices describe caterpillars; fractional ones live in
// the continuous relaxation.
class AssignmentMatrix {
public:
  AssignmentMatrix(int n, int q, AssignmentMode mode)
      : n_(n), q_(q), mode_(mode), entries_(static_cast<std::size_t>(n) * q, 0.0) {}

  int n() const { return n_; }
  int q() const { return q_; }
  AssignmentMode mode() const { return mode_; }

  double operator()(int i, int k) const { return entries_[static_cast<std::size_t>(i) * q_ + k]; }
  double& operator()(int i, int k) { return entries_[static_cast<std::size_t>(i) * q_ + k]; }

  AssignmentMatrix column_reversed() const {
    AssignmentMatrix rev(n_, q_, mode_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < q_; ++k) rev(i, q_ - 1 - k) = (*this)(i, k);
    return rev;
  }

  // Nonzero entries as (i, k, value) with 0-based i and 1-based position k.
  std::vector<std::tuple<int, int, double>> nonzeros() const {
    std::vector<std::tuple<int, int, double>> out;
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < q_; ++k)
        if ((*this)(i, k) != 0.0) out.emplace_back(i, k + 1, (*this)(i, k));
    return out;
  }

private:
  int n_;
  int q_;
  AssignmentMode mode_;
  std::vector<double> entries_;
};

enum class ConstraintFamily {
  box,              // x_ik in {0,1} or [0,1]
  row_sum,          // each vertex assigned exactly once
  internal_column,  // exactly one internal vertex per position
  degree_balance,   // pendant counts match the degree of the internal vertex
};

struct ConstraintViolation {
  ConstraintFamily family;
  int index;  // row i for box/row_sum (box also reports column), column k otherwise
  int column;
  double residual;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<ConstraintViolation> violations;
};

// Right-hand side of the degree-balance constraint at position k: minus the
// number of backbone ends at that position (both ends coincide when q = 1).
inline int degree_balance_rhs(int q, int k) {
  int ends = 0;
  if (k == 0) ++ends;
  if (k == q - 1) ++ends;
  return -ends;
}

inline FeasibilityReport check_feasible(const Instance& inst, const AssignmentMatrix& x) {
  if (x.n() != inst.n() || x.q() != inst.q()) {
    fail(errc::dimension_mismatch, "assignment is " + std::to_string(x.n()) + "x" +
                                       std::to_string(x.q()) + ", instance needs " +
                                       std::to_string(inst.n()) + "x" +
                                       std::to_string(inst.q()));
  }
  const int n = inst.n();
  const int q = inst.q();
  const bool fractional = x.mode() == AssignmentMode::fractional;
  const double tol = fractional ? 1e-9 : 0.0;

  FeasibilityReport report;
  auto violate = [&](ConstraintFamily family, int index, int column, double residual) {
    report.feasible = false;
    report.violations.push_back({family, index, column, residual});
  };

  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < q; ++k) {
      const double v = x(i, k);
      if (fractional) {
        if (v < -tol || v > 1.0 + tol) violate(ConstraintFamily::box, i, k, v);
      } else if (v != 0.0 && v != 1.0) {
        violate(ConstraintFamily::box, i, k, v);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int k = 0; k < q; ++k) row += x(i, k);
    if (std::abs(row - 1.0) > tol) violate(ConstraintFamily::row_sum, i, -1, row - 1.0);
  }
  for (int k = 0; k < q; ++k) {
    double col = 0.0;
    for (int i = 0; i < q; ++i) col += x(i, k);
    if (std::abs(col - 1.0) > tol) violate(ConstraintFamily::internal_column, k, k, col - 1.0);
  }
  for (int k = 0; k < q; ++k) {
    double balance = 0.0;
    for (int i = 0; i < n; ++i) balance += (inst.degree(i) - 2) * x(i, k);
    const double rhs = degree_balance_rhs(q, k);
    if (std::abs(balance - rhs) > tol) {
      violate(ConstraintFamily::degree_balance, k, k, balance - rhs);
    }
  }
  return report;
}

// w_k(X) = sum_i mu_i x_ik.
inline std::vector<double> position_weights_of(const Instance& inst, const AssignmentMatrix& x) {
  std::vector<double> w(x.q(), 0.0);
  for (int i = 0; i < x.n(); ++i) {
    const double mu = inst.weight(i);
    if (mu == 0.0) continue;
    for (int k = 0; k < x.q(); ++k) w[k] += mu * x(i, k);
  }
  return w;
}

// p_k(X) = sum_l w_l(X) |k-l|.
inline std::vector<double> position_prices_of(const std::vector<double>& position_weights) {
  const int q = static_cast<int>(position_weights.size());
  std::vector<double> p(q, 0.0);
  for (int k = 0; k < q; ++k) {
    double acc = 0.0;
    for (int l = 0; l < q; ++l) acc += position_weights[l] * std::abs(k - l);
    p[k] = acc;
  }
  return p;
}

// Quadratic part of the index: 1/2 sum_{k,l} w_k(X) w_l(X) |k-l|.
inline double qap_objective_from_weights(const std::vector<double>& w) {
  const int q = static_cast<int>(w.size());
  double acc = 0.0;
  for (int k = 0; k < q; ++k)
    for (int l = k + 1; l < q; ++l) acc += w[k] * w[l] * (l - k);
  return acc;
}

inline double qap_objective(const Instance& inst, const AssignmentMatrix& x) {
  return qap_objective_from_weights(position_weights_of(inst, x));
}

// Full index value of an assignment: the quadratic term plus the constant
// mu * (pendant weight sum) - sum_{pendants} mu_i^2, which does not depend
// on the assignment.
inline double vwwi_assignment(const Instance& inst, const AssignmentMatrix& x) {
  const FeasibilityReport report = check_feasible(inst, x);
  if (!report.feasible) {
    fail(errc::infeasible_assignment,
         "assignment violates " + std::to_string(report.violations.size()) + " constraint(s)");
  }
  return qap_objective(inst, x) + inst.assignment_constant();
}

// Builds the caterpillar a feasible binary assignment describes: backbone
// edges between internal vertices at consecutive positions, pendants attached
// to the internal vertex of their position. Vertex ids are canonical indices.
inline Caterpillar caterpillar_from_assignment(const Instance& inst, const AssignmentMatrix& x) {
  if (x.mode() != AssignmentMode::binary) {
    fail(errc::infeasible_assignment, "caterpillar construction needs a binary assignment");
  }
  const FeasibilityReport report = check_feasible(inst, x);
  if (!report.feasible) {
    fail(errc::infeasible_assignment,
         "assignment violates " + std::to_string(report.violations.size()) + " constraint(s)");
  }
  const int q = inst.q();
  std::vector<int> backbone(q, -1);
  std::vector<std::vector<int>> pendants(q);
  for (int i = 0; i < inst.n(); ++i) {
    for (int k = 0; k < q; ++k) {
      if (x(i, k) == 1.0) {
        if (inst.is_internal(i)) {
          backbone[k] = i;
        } else {
          pendants[k].push_back(i);
        }
      }
    }
  }
  return Caterpillar(inst.weights(), std::move(backbone), std::move(pendants));
}

}  // namespace wiener
