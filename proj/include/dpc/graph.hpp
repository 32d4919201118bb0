#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dpc/error.hpp"

namespace dpc {

using Vertex = int;

/// Undirected edge stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : adj_(static_cast<std::size_t>(check_order(n))) {}

  Graph(int n, std::span<const std::pair<Vertex, Vertex>> edges) : Graph(n) {
    for (const auto& [a, b] : edges) add(a, b);
    finish();
  }

  Graph(int n, std::span<const Edge> edges) : Graph(n) {
    for (const auto& e : edges) add(e.u, e.v);
    finish();
  }

  Graph(int n, std::initializer_list<std::pair<Vertex, Vertex>> edges)
      : Graph(n, std::span<const std::pair<Vertex, Vertex>>(edges.begin(), edges.size())) {}

  int order() const noexcept { return static_cast<int>(adj_.size()); }
  int size() const noexcept { return static_cast<int>(edges_.size()); }

  /// Edges in insertion order.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(int index) const { return edges_.at(static_cast<std::size_t>(index)); }

  /// Sorted neighbor list.
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  bool adjacent(Vertex a, Vertex b) const { return edge_index(a, b) >= 0; }

  /// Position of {a,b} in edges(), or -1.
  int edge_index(Vertex a, Vertex b) const {
    if (a == b || !valid(a) || !valid(b)) return -1;
    auto it = index_.find(key(a, b));
    return it == index_.end() ? -1 : it->second;
  }

  bool valid(Vertex v) const noexcept { return v >= 0 && v < order(); }

  /// Subgraph induced on `keep` (in the given order); vertex i of the result is keep[i].
  Graph induced(std::span<const Vertex> keep) const {
    std::vector<int> pos(adj_.size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) pos[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
    std::vector<Edge> sub;
    for (const auto& e : edges_)
      if (pos[e.u] >= 0 && pos[e.v] >= 0) sub.emplace_back(pos[e.u], pos[e.v]);
    return Graph(static_cast<int>(keep.size()), std::span<const Edge>(sub));
  }

  bool connected() const {
    if (order() == 0) return true;
    std::vector<char> seen(adj_.size(), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : adj_[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
    }
    return count == order();
  }

 private:
  static int check_order(int n) {
    if (n < 0) throw ContractViolation("negative vertex count");
    return n;
  }

  std::uint64_t key(Vertex a, Vertex b) const {
    Edge e(a, b);
    return (static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.v);
  }

  void add(Vertex a, Vertex b) {
    if (!valid(a) || !valid(b))
      throw ContractViolation("edge [" + std::to_string(a) + "," + std::to_string(b) + "] out of range");
    if (a == b) throw ContractViolation("loop at vertex " + std::to_string(a));
    if (!index_.emplace(key(a, b), static_cast<int>(edges_.size())).second)
      throw ContractViolation("parallel edge [" + std::to_string(a) + "," + std::to_string(b) + "]");
    edges_.emplace_back(a, b);
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }

  void finish() {
    for (auto& list : adj_) std::sort(list.begin(), list.end());
  }

  std::vector<std::vector<Vertex>> adj_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, int> index_;
};

inline Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, std::span<const Edge>(e));
}

inline Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, std::span<const Edge>(e));
}

inline Graph petersen_graph() {
  std::vector<Edge> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, std::span<const Edge>(e));
}

}  // namespace dpc
