#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "wiener/errors.hpp"
#include "wiener/weighted_tree.hpp"

namespace wiener {

// A caterpillar described by its backbone: an ordered list of internal
// vertices, each with the pendant vertices attached to it. Vertex ids are
// 0-based and must partition 0..n-1. Backbone positions are 1-based in the
// math and 0-based in the arrays here.
class Caterpillar {
public:
  Caterpillar(std::vector<double> weights, std::vector<int> backbone,
              std::vector<std::vector<int>> pendants)
      : weights_(std::move(weights)),
        backbone_(std::move(backbone)),
        pendants_(std::move(pendants)) {
    const int n = static_cast<int>(weights_.size());
    if (backbone_.empty()) fail(errc::bad_input, "caterpillar needs at least one backbone vertex");
    if (pendants_.size() != backbone_.size()) {
      fail(errc::bad_input, "pendant lists must match backbone length");
    }
    std::vector<int> seen(n, 0);
    auto mark = [&](int v) {
      if (v < 0 || v >= n || seen[v]++) fail(errc::bad_input, "vertex ids must partition 0..n-1");
    };
    for (int v : backbone_) mark(v);
    for (const auto& list : pendants_)
      for (int v : list) mark(v);
    if (std::accumulate(seen.begin(), seen.end(), 0) != n) {
      fail(errc::bad_input, "every vertex must be associated with exactly one position");
    }
    position_weights_.resize(backbone_.size());
    for (std::size_t k = 0; k < backbone_.size(); ++k) {
      double w = weights_[backbone_[k]];
      for (int v : pendants_[k]) w += weights_[v];
      position_weights_[k] = w;
    }
  }

  int n() const { return static_cast<int>(weights_.size()); }
  int positions() const { return static_cast<int>(backbone_.size()); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<int>& backbone() const { return backbone_; }
  const std::vector<std::vector<int>>& pendants() const { return pendants_; }

  // w_T(k): total weight associated with each backbone position.
  const std::vector<double>& position_weights() const { return position_weights_; }

  // p_T(k) = sum_l w_T(l) |k-l|.
  std::vector<double> position_prices() const {
    const int q = positions();
    std::vector<double> prices(q, 0.0);
    for (int k = 0; k < q; ++k) {
      double p = 0.0;
      for (int l = 0; l < q; ++l) p += position_weights_[l] * std::abs(k - l);
      prices[k] = p;
    }
    return prices;
  }

  WeightedTree to_tree() const {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n() - 1);
    for (int k = 0; k + 1 < positions(); ++k) edges.emplace_back(backbone_[k], backbone_[k + 1]);
    for (int k = 0; k < positions(); ++k)
      for (int v : pendants_[k]) edges.emplace_back(backbone_[k], v);
    return WeightedTree(weights_, edges);
  }

  Caterpillar reversed() const {
    std::vector<int> rb(backbone_.rbegin(), backbone_.rend());
    std::vector<std::vector<int>> rp(pendants_.rbegin(), pendants_.rend());
    return Caterpillar(weights_, std::move(rb), std::move(rp));
  }

private:
  std::vector<double> weights_;
  std::vector<int> backbone_;
  std::vector<std::vector<int>> pendants_;
  std::vector<double> position_weights_;
};

// Index value from the position decomposition:
//   1/2 sum_k w_T(k) p_T(k) + mu * (pendant weight sum) - sum_{pendants} mu(v)^2,
// with mu the total weight. Pendants at positions k and l sit at distance
// |k-l|+2, a pendant and an internal vertex at |k-l|+1, two internal vertices
// at |k-l|; expanding those offsets over all pairs gives the three terms.
inline double vwwi_caterpillar(const Caterpillar& cat) {
  const std::vector<double>& w = cat.position_weights();
  const std::vector<double> p = cat.position_prices();
  double quadratic = 0.0;
  for (int k = 0; k < cat.positions(); ++k) quadratic += w[k] * p[k];
  double total = 0.0;
  double pendant_sum = 0.0;
  double pendant_square_sum = 0.0;
  for (double mu : cat.weights()) total += mu;
  for (const auto& list : cat.pendants()) {
    for (int v : list) {
      pendant_sum += cat.weights()[v];
      pendant_square_sum += cat.weights()[v] * cat.weights()[v];
    }
  }
  return 0.5 * quadratic + total * pendant_sum - pendant_square_sum;
}

}  // namespace wiener
