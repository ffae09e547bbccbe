#pragma once

#include <algorithm>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "wiener/errors.hpp"
#include "wiener/instance.hpp"

namespace wiener {

// A tree with non-negative vertex weights, given as an edge list over
// 0-based vertex ids. Construction checks connectivity; together with
// |E| = n-1 that makes it a tree.
class WeightedTree {
public:
  WeightedTree(std::vector<double> weights, std::vector<std::pair<int, int>> edges)
      : weights_(std::move(weights)), edges_(std::move(edges)) {
    const int n = static_cast<int>(weights_.size());
    if (n == 0) fail(errc::bad_input, "tree has no vertices");
    if (static_cast<int>(edges_.size()) != n - 1) {
      fail(errc::bad_input, "tree on " + std::to_string(n) + " vertices needs " +
                                std::to_string(n - 1) + " edges, got " +
                                std::to_string(edges_.size()));
    }
    adjacency_.resize(n);
    for (const auto& [u, v] : edges_) {
      if (u < 0 || u >= n || v < 0 || v >= n || u == v) {
        fail(errc::bad_input,
             "bad edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
      }
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (double w : weights_) {
      if (w < 0.0) fail(errc::negative_weight, "negative vertex weight");
    }
    if (!connected()) fail(errc::bad_input, "edge list does not form a tree");
  }

  int n() const { return static_cast<int>(weights_.size()); }
  double weight(int v) const { return weights_[v]; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }

  std::vector<int> degrees() const {
    std::vector<int> d(n());
    for (int v = 0; v < n(); ++v) d[v] = degree(v);
    return d;
  }

  // Hop distances from src by breadth-first traversal.
  std::vector<int> distances_from(int src) const {
    std::vector<int> dist(n(), -1);
    std::queue<int> frontier;
    dist[src] = 0;
    frontier.push(src);
    while (!frontier.empty()) {
      int u = frontier.front();
      frontier.pop();
      for (int v : adjacency_[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          frontier.push(v);
        }
      }
    }
    return dist;
  }

private:
  bool connected() const {
    const std::vector<int> dist = distances_from(0);
    return std::find(dist.begin(), dist.end(), -1) == dist.end();
  }

  std::vector<double> weights_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
};

// Vertex-weighted Wiener index: half the sum over ordered vertex pairs of
// weight(u) * weight(v) * dist(u, v), via one BFS per vertex.
inline double vwwi_tree(const WeightedTree& tree) {
  double total = 0.0;
  for (int u = 0; u < tree.n(); ++u) {
    if (tree.weight(u) == 0.0) continue;
    const std::vector<int> dist = tree.distances_from(u);
    for (int v = u + 1; v < tree.n(); ++v) {
      total += tree.weight(u) * tree.weight(v) * dist[v];
    }
  }
  return total;
}

// Plain Wiener index: all weights forced to one.
inline double wiener_index(const WeightedTree& tree) {
  WeightedTree unit(std::vector<double>(tree.n(), 1.0), tree.edges());
  return vwwi_tree(unit);
}

}  // namespace wiener
