#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "dpc/graph.hpp"

namespace dpc {

/// A cycle on exactly `len` distinct vertices, as a vertex sequence, if one exists.
inline std::optional<std::vector<Vertex>> find_cycle_of_length(const Graph& g, int len) {
  if (len < 3) throw ContractViolation("cycle length must be at least 3");
  const int n = g.order();
  if (len > n) return std::nullopt;
  std::vector<Vertex> path;
  std::vector<char> used(static_cast<std::size_t>(n), 0);

  // Paths start at their smallest vertex s and only visit vertices above s.
  auto extend = [&](auto&& self, Vertex s) -> bool {
    Vertex last = path.back();
    if (static_cast<int>(path.size()) == len) return g.adjacent(last, s);
    for (Vertex w : g.neighbors(last)) {
      if (w <= s || used[w]) continue;
      used[w] = 1;
      path.push_back(w);
      if (self(self, s)) return true;
      path.pop_back();
      used[w] = 0;
    }
    return false;
  };

  for (Vertex s = 0; s < n; ++s) {
    if (g.degree(s) < 2) continue;
    path.assign(1, s);
    used[s] = 1;
    if (extend(extend, s)) return path;
    used[s] = 0;
  }
  return std::nullopt;
}

inline bool has_cycle_of_length(const Graph& g, int len) { return find_cycle_of_length(g, len).has_value(); }

/// Injective map from pattern vertices to graph vertices carrying every pattern edge
/// onto a graph edge (subgraph, not induced-subgraph, containment).
inline std::optional<std::vector<Vertex>> find_pattern(const Graph& g, const Graph& p) {
  const int np = p.order(), ng = g.order();
  if (np == 0) return std::vector<Vertex>{};
  if (np > ng || p.size() > g.size()) return std::nullopt;

  // Match pattern vertices in an order where each vertex (after the first of its
  // component) has an already-placed neighbor.
  std::vector<Vertex> order;
  std::vector<char> placed(static_cast<std::size_t>(np), 0);
  while (static_cast<int>(order.size()) < np) {
    Vertex best = -1;
    int best_links = -1;
    for (Vertex v = 0; v < np; ++v) {
      if (placed[v]) continue;
      int links = 0;
      for (Vertex w : p.neighbors(v)) links += placed[w];
      if (links > best_links || (links == best_links && p.degree(v) > p.degree(best))) {
        best = v;
        best_links = links;
      }
    }
    placed[best] = 1;
    order.push_back(best);
  }

  std::vector<Vertex> map(static_cast<std::size_t>(np), -1);
  std::vector<char> taken(static_cast<std::size_t>(ng), 0);
  auto place = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == order.size()) return true;
    Vertex pv = order[depth];
    for (Vertex gv = 0; gv < ng; ++gv) {
      if (taken[gv] || g.degree(gv) < p.degree(pv)) continue;
      bool ok = true;
      for (Vertex pw : p.neighbors(pv))
        if (map[pw] >= 0 && !g.adjacent(gv, map[pw])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      map[pv] = gv;
      taken[gv] = 1;
      if (self(self, depth + 1)) return true;
      taken[gv] = 0;
      map[pv] = -1;
    }
    return false;
  };
  if (place(place, 0)) return map;
  return std::nullopt;
}

inline bool contains_pattern(const Graph& g, const Graph& p) { return find_pattern(g, p).has_value(); }

/// Two 4-wheels sharing one rim vertex (vertex 0). Wheel centers are 1 and 5.
inline Graph butterfly_graph() {
  return Graph(9, {{0, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 0}, {1, 2}, {1, 3}, {1, 4},
                   {0, 6}, {6, 7}, {7, 8}, {8, 0}, {5, 0}, {5, 6}, {5, 7}, {5, 8}});
}

}  // namespace dpc
