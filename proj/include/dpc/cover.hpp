#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "dpc/graph.hpp"

namespace dpc {

/// Colors are local names 0..k-1 inside the library (printed as 1..k).
using ColorMask = std::uint32_t;
using Permutation = std::vector<int>;

inline constexpr int kMaxColors = 8;

inline ColorMask full_mask(int k) { return (ColorMask{1} << k) - 1; }
inline int popcount(ColorMask m) { return std::popcount(m); }

inline Permutation identity_permutation(int k) {
  Permutation p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Permutation inverse(const Permutation& p) {
  Permutation q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return q;
}

inline bool is_permutation_of(const Permutation& p, int k) {
  if (static_cast<int>(p.size()) != k) return false;
  ColorMask seen = 0;
  for (int c : p) {
    if (c < 0 || c >= k || (seen >> c & 1)) return false;
    seen |= ColorMask{1} << c;
  }
  return true;
}

inline ColorMask permute_mask(const Permutation& p, ColorMask m) {
  ColorMask out = 0;
  for (std::size_t c = 0; c < p.size(); ++c)
    if (m >> c & 1) out |= ColorMask{1} << p[c];
  return out;
}

/// Per-vertex available colors; full instances have every list equal to 0..k-1.
struct ListAssignment {
  int k = 0;
  std::vector<ColorMask> available;

  static ListAssignment full(int n, int k) { return {k, std::vector<ColorMask>(static_cast<std::size_t>(n), full_mask(k))}; }
  bool allows(Vertex v, int c) const { return available.at(static_cast<std::size_t>(v)) >> c & 1; }
};

/// One bijection per edge, stored for the orientation u -> v with u < v.
class MatchingAssignment {
 public:
  MatchingAssignment() = default;
  MatchingAssignment(int k, std::vector<Permutation> sigma) : k_(k), sigma_(std::move(sigma)) {
    for (const auto& p : sigma_)
      if (!is_permutation_of(p, k_)) throw ContractViolation("matching is not a bijection on the color names");
  }

  static MatchingAssignment identity(const Graph& g, int k) {
    return MatchingAssignment(k, std::vector<Permutation>(static_cast<std::size_t>(g.size()), identity_permutation(k)));
  }

  template <class Rng>
  static MatchingAssignment random(const Graph& g, int k, Rng& rng) {
    std::vector<Permutation> s;
    for (int e = 0; e < g.size(); ++e) {
      auto p = identity_permutation(k);
      std::shuffle(p.begin(), p.end(), rng);
      s.push_back(std::move(p));
    }
    return MatchingAssignment(k, std::move(s));
  }

  int k() const noexcept { return k_; }
  int size() const noexcept { return static_cast<int>(sigma_.size()); }
  const Permutation& sigma(int edge) const { return sigma_.at(static_cast<std::size_t>(edge)); }
  Permutation& sigma(int edge) { return sigma_.at(static_cast<std::size_t>(edge)); }

 private:
  int k_ = 0;
  std::vector<Permutation> sigma_;
};

/// A graph with lists and matchings: the data of a cover graph.
struct CoverInstance {
  Graph graph;
  ListAssignment lists;
  MatchingAssignment matchings;

  CoverInstance() = default;
  CoverInstance(Graph g, ListAssignment l, MatchingAssignment m)
      : graph(std::move(g)), lists(std::move(l)), matchings(std::move(m)) {
    if (lists.k < 1 || lists.k > kMaxColors) throw ContractViolation("k must lie in 1..8");
    if (static_cast<int>(lists.available.size()) != graph.order())
      throw ContractViolation("list assignment does not cover every vertex");
    for (ColorMask m : lists.available)
      if (m & ~full_mask(lists.k)) throw ContractViolation("available color outside 1..k");
    if (matchings.k() != lists.k || matchings.size() != graph.size())
      throw ContractViolation("matchings must be defined exactly on the edge set");
  }

  /// Full lists, straight matchings.
  static CoverInstance straight(Graph g, int k) {
    auto l = ListAssignment::full(g.order(), k);
    auto m = MatchingAssignment::identity(g, k);
    return CoverInstance(std::move(g), std::move(l), std::move(m));
  }

  int k() const noexcept { return lists.k; }
  int order() const noexcept { return graph.order(); }

  /// Color of b matched to color c of a across edge ab.
  int image(Vertex a, Vertex b, int c) const {
    int e = graph.edge_index(a, b);
    if (e < 0) throw ContractViolation("no edge " + std::to_string(a) + "-" + std::to_string(b));
    return image_on(e, a, c);
  }

  int image_on(int e, Vertex a, int c) const {
    const auto& p = matchings.sigma(e);
    if (graph.edge(e).u == a) return p[static_cast<std::size_t>(c)];
    for (int i = 0; i < k(); ++i)
      if (p[static_cast<std::size_t>(i)] == c) return i;
    return -1;
  }
};

/// A (partial) choice of one color per vertex; -1 means unassigned.
struct Transversal {
  std::vector<int> color;

  Transversal() = default;
  explicit Transversal(int n) : color(static_cast<std::size_t>(n), -1) {}
  explicit Transversal(std::vector<int> c) : color(std::move(c)) {}

  bool assigned(Vertex v) const { return color.at(static_cast<std::size_t>(v)) >= 0; }
  bool complete() const {
    return std::all_of(color.begin(), color.end(), [](int c) { return c >= 0; });
  }
  friend bool operator==(const Transversal&, const Transversal&) = default;
};

/// Chosen cover vertices are available and pairwise non-adjacent in the cover graph.
inline bool is_independent(const CoverInstance& inst, const Transversal& t) {
  if (static_cast<int>(t.color.size()) != inst.order()) return false;
  for (Vertex v = 0; v < inst.order(); ++v)
    if (t.assigned(v) && (t.color[v] >= inst.k() || !inst.lists.allows(v, t.color[v]))) return false;
  for (int e = 0; e < inst.graph.size(); ++e) {
    const Edge& ed = inst.graph.edge(e);
    if (t.assigned(ed.u) && t.assigned(ed.v) && inst.image_on(e, ed.u, t.color[ed.u]) == t.color[ed.v]) return false;
  }
  return true;
}

inline bool is_straight(const CoverInstance& inst, Vertex a, Vertex b) {
  int e = inst.graph.edge_index(a, b);
  if (e < 0) throw ContractViolation("is_straight: unknown edge " + std::to_string(a) + "-" + std::to_string(b));
  return inst.matchings.sigma(e) == identity_permutation(inst.k());
}

/// Colors left for unassigned v once every assigned neighbor's matched color is removed.
inline ColorMask residual(const CoverInstance& inst, const Transversal& partial, Vertex v) {
  if (partial.assigned(v)) throw ContractViolation("residual: vertex " + std::to_string(v) + " already assigned");
  ColorMask m = inst.lists.available.at(static_cast<std::size_t>(v));
  for (Vertex u : inst.graph.neighbors(v))
    if (partial.assigned(u)) m &= ~(ColorMask{1} << inst.image(u, v, partial.color[u]));
  return m;
}

struct Straightened {
  CoverInstance instance;
  std::vector<Permutation> renaming;  // renaming[v][old color] = new color

  Transversal to_original(const Transversal& t) const {
    Transversal out(static_cast<int>(t.color.size()));
    for (std::size_t v = 0; v < t.color.size(); ++v)
      if (t.color[v] >= 0) out.color[v] = inverse(renaming[v])[static_cast<std::size_t>(t.color[v])];
    return out;
  }

  Transversal to_straightened(const Transversal& t) const {
    Transversal out(static_cast<int>(t.color.size()));
    for (std::size_t v = 0; v < t.color.size(); ++v)
      if (t.color[v] >= 0) out.color[v] = renaming[v][static_cast<std::size_t>(t.color[v])];
    return out;
  }
};

/// Renames the lists so that every edge of the forest becomes straight.
inline Straightened straighten(const CoverInstance& inst, const std::vector<Edge>& forest) {
  const int n = inst.order(), k = inst.k();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<Vertex>> tree_adj(static_cast<std::size_t>(n));
  for (const auto& e : forest) {
    if (!inst.graph.adjacent(e.u, e.v))
      throw ContractViolation("straighten: forest edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " not in graph");
    int a = find(e.u), b = find(e.v);
    if (a == b) throw ContractViolation("straighten: edge set contains a cycle");
    parent[a] = b;
    tree_adj[e.u].push_back(e.v);
    tree_adj[e.v].push_back(e.u);
  }

  std::vector<Permutation> pi(static_cast<std::size_t>(n));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Vertex root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    pi[root] = identity_permutation(k);
    std::vector<Vertex> queue{root};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      Vertex p = queue[qi];
      for (Vertex c : tree_adj[p]) {
        if (seen[c]) continue;
        seen[c] = 1;
        // pi_c(sigma_pc(a)) = pi_p(a)
        Permutation& q = pi[c];
        q.assign(static_cast<std::size_t>(k), 0);
        for (int a = 0; a < k; ++a) q[static_cast<std::size_t>(inst.image(p, c, a))] = pi[p][static_cast<std::size_t>(a)];
        queue.push_back(c);
      }
    }
  }

  std::vector<Permutation> sigma;
  for (int e = 0; e < inst.graph.size(); ++e) {
    const Edge& ed = inst.graph.edge(e);
    Permutation s(static_cast<std::size_t>(k));
    auto inv_u = inverse(pi[ed.u]);
    for (int x = 0; x < k; ++x)
      s[static_cast<std::size_t>(x)] = pi[ed.v][static_cast<std::size_t>(inst.matchings.sigma(e)[static_cast<std::size_t>(inv_u[static_cast<std::size_t>(x)])])];
    sigma.push_back(std::move(s));
  }
  ListAssignment lists{k, {}};
  for (Vertex v = 0; v < n; ++v) lists.available.push_back(permute_mask(pi[v], inst.lists.available[v]));
  return {CoverInstance(inst.graph, std::move(lists), MatchingAssignment(k, std::move(sigma))), std::move(pi)};
}

}  // namespace dpc
