#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "wiener/errors.hpp"

namespace wiener {

// A validated pair of vertex weight and degree sequences, stored in canonical
// order: degrees non-increasing, and weights non-increasing among vertices of
// equal degree. The first q entries are the internal vertices (degree > 1),
// the remaining n-q are pendants. The permutation back to the caller's
// original order is retained.
class Instance {
public:
  static Instance validate(const std::vector<double>& weights,
                           const std::vector<int>& degrees) {
    if (weights.size() != degrees.size()) {
      fail(errc::length_mismatch,
           "weights has " + std::to_string(weights.size()) + " entries, degrees has " +
               std::to_string(degrees.size()));
    }
    const int n = static_cast<int>(degrees.size());
    for (int i = 0; i < n; ++i) {
      if (degrees[i] < 1) {
        fail(errc::non_positive_degree,
             "degree " + std::to_string(degrees[i]) + " at index " + std::to_string(i));
      }
      if (weights[i] < 0.0) {
        fail(errc::negative_weight,
             "weight " + std::to_string(weights[i]) + " at index " + std::to_string(i));
      }
    }
    long long degree_sum = std::accumulate(degrees.begin(), degrees.end(), 0LL);
    if (degree_sum != 2LL * (n - 1)) {
      fail(errc::degree_sum_invalid, "degree sum " + std::to_string(degree_sum) +
                                         " != 2(n-1)=" + std::to_string(2LL * (n - 1)));
    }

    Instance inst;
    inst.original_index_.resize(n);
    std::iota(inst.original_index_.begin(), inst.original_index_.end(), 0);
    std::sort(inst.original_index_.begin(), inst.original_index_.end(), [&](int a, int b) {
      if (degrees[a] != degrees[b]) return degrees[a] > degrees[b];
      if (weights[a] != weights[b]) return weights[a] > weights[b];
      return a < b;
    });
    inst.weights_.resize(n);
    inst.degrees_.resize(n);
    for (int i = 0; i < n; ++i) {
      inst.weights_[i] = weights[inst.original_index_[i]];
      inst.degrees_[i] = degrees[inst.original_index_[i]];
    }
    inst.q_ = static_cast<int>(
        std::count_if(inst.degrees_.begin(), inst.degrees_.end(), [](int d) { return d > 1; }));
    inst.total_weight_ = std::accumulate(inst.weights_.begin(), inst.weights_.end(), 0.0);
    inst.internal_weight_ =
        std::accumulate(inst.weights_.begin(), inst.weights_.begin() + inst.q_, 0.0);
    inst.pendant_weight_ = inst.total_weight_ - inst.internal_weight_;
    // Monotone in degrees: internal weights form a non-increasing sequence.
    inst.monotone_ = true;
    for (int i = 0; i + 1 < inst.q_; ++i) {
      if (inst.weights_[i] < inst.weights_[i + 1]) {
        inst.monotone_ = false;
        break;
      }
    }
    return inst;
  }

  int n() const { return static_cast<int>(weights_.size()); }
  int q() const { return q_; }
  int pendant_count() const { return n() - q_; }

  double weight(int i) const { return weights_[i]; }
  int degree(int i) const { return degrees_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<int>& degrees() const { return degrees_; }

  double total_weight() const { return total_weight_; }
  double pendant_weight() const { return pendant_weight_; }
  double internal_weight() const { return internal_weight_; }
  bool monotone() const { return monotone_; }

  bool is_internal(int i) const { return i < q_; }

  // Caller-order index of the vertex stored at canonical position i.
  int original_index(int i) const { return original_index_[i]; }
  const std::vector<int>& original_order() const { return original_index_; }

  // Sum over pendants of the squared weight, used by the evaluation paths.
  double pendant_square_sum() const {
    double s = 0.0;
    for (int i = q_; i < n(); ++i) s += weights_[i] * weights_[i];
    return s;
  }

  // Constant part of the index once position weights are known.
  double assignment_constant() const {
    return total_weight_ * pendant_weight_ - pendant_square_sum();
  }

private:
  std::vector<double> weights_;
  std::vector<int> degrees_;
  std::vector<int> original_index_;
  int q_ = 0;
  double total_weight_ = 0.0;
  double pendant_weight_ = 0.0;
  double internal_weight_ = 0.0;
  bool monotone_ = true;
};

inline Instance validate_instance(const std::vector<double>& weights,
                                  const std::vector<int>& degrees) {
  return Instance::validate(weights, degrees);
}

}  // namespace wiener
