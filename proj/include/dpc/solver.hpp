#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "dpc/clusters.hpp"
#include "dpc/cover.hpp"
#include "dpc/plane_graph.hpp"

namespace dpc {

struct SolverOptions {
  /// Defer vertices whose residual list outnumbers their undecided neighbors and
  /// color them greedily, in reverse order, after the search.
  bool degeneracy = true;
  /// Split along a separating good 3-cycle first (plane inputs only).
  bool decompose_separating = false;
};

struct SolverStats {
  long long nodes = 0;
  int deferred = 0;
};

namespace detail {

class TransversalSearch {
 public:
  TransversalSearch(const CoverInstance& inst, const SolverOptions& opt, SolverStats* stats)
      : inst_(inst), opt_(opt), stats_(stats) {
    const int n = inst.order();
    links_.resize(static_cast<std::size_t>(n));
    for (int e = 0; e < inst.graph.size(); ++e) {
      const Edge& ed = inst.graph.edge(e);
      Link fwd{ed.v, {}}, back{ed.u, {}};
      for (int c = 0; c < inst.k(); ++c) {
        fwd.map.push_back(inst.image_on(e, ed.u, c));
        back.map.push_back(inst.image_on(e, ed.v, c));
      }
      links_[ed.u].push_back(std::move(fwd));
      links_[ed.v].push_back(std::move(back));
    }
  }

  std::optional<Transversal> run(const Transversal& partial) {
    const int n = inst_.order();
    color_ = partial.color;
    res_.assign(static_cast<std::size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v)
      if (color_[v] < 0) res_[v] = residual(inst_, partial, v);

    active_.assign(static_cast<std::size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v) active_[v] = color_[v] < 0;
    std::vector<Vertex> deferred;
    if (opt_.degeneracy) {
      for (bool changed = true; changed;) {
        changed = false;
        for (Vertex v = 0; v < n; ++v) {
          if (!active_[v]) continue;
          int undecided = 0;
          for (const auto& l : links_[v]) undecided += active_[l.to];
          if (popcount(res_[v]) > undecided) {
            active_[v] = 0;
            deferred.push_back(v);
            changed = true;
          }
        }
      }
    }
    if (stats_) stats_->deferred = static_cast<int>(deferred.size());

    if (!search()) return std::nullopt;

    for (auto it = deferred.rbegin(); it != deferred.rend(); ++it) {
      Vertex v = *it;
      ColorMask m = inst_.lists.available[v];
      for (const auto& l : links_[v])
        if (color_[l.to] >= 0) m &= ~(ColorMask{1} << back_image(v, l.to));
      if (m == 0) throw Error("degeneracy ordering invariant broken");  // cannot happen
      color_[v] = std::countr_zero(m);
    }
    return Transversal(color_);
  }

 private:
  struct Link {
    Vertex to;
    std::vector<int> map;  // color here -> matched color at `to`
  };

  // Color at v matched to the color currently chosen at u.
  int back_image(Vertex v, Vertex u) const {
    for (const auto& l : links_[u])
      if (l.to == v) return l.map[static_cast<std::size_t>(color_[u])];
    return -1;
  }

  bool search() {
    if (stats_) ++stats_->nodes;
    Vertex best = -1;
    int best_size = 1 << 30;
    for (Vertex v = 0; v < inst_.order(); ++v) {
      if (!active_[v] || color_[v] >= 0) continue;
      int s = popcount(res_[v]);
      if (s < best_size) {
        best = v;
        best_size = s;
      }
    }
    if (best < 0) return true;
    if (best_size == 0) return false;

    for (ColorMask m = res_[best]; m; m &= m - 1) {
      int c = std::countr_zero(m);
      color_[best] = c;
      std::vector<std::pair<Vertex, ColorMask>> undo;
      bool dead = false;
      for (const auto& l : links_[best]) {
        if (!active_[l.to] || color_[l.to] >= 0) continue;
        ColorMask bit = ColorMask{1} << l.map[static_cast<std::size_t>(c)];
        if (res_[l.to] & bit) {
          undo.emplace_back(l.to, res_[l.to]);
          res_[l.to] &= ~bit;
          if (res_[l.to] == 0) dead = true;
        }
      }
      if (!dead && search()) return true;
      for (auto& [v, m0] : undo) res_[v] = m0;
      color_[best] = -1;
    }
    return false;
  }

  const CoverInstance& inst_;
  SolverOptions opt_;
  SolverStats* stats_;
  std::vector<std::vector<Link>> links_;
  std::vector<int> color_;
  std::vector<ColorMask> res_;
  std::vector<char> active_;
};

/// Sub-instance induced on `keep`; vertex i of the result is keep[i].
inline CoverInstance restrict_instance(const CoverInstance& inst, const std::vector<Vertex>& keep) {
  Graph sub = inst.graph.induced(keep);
  ListAssignment lists{inst.k(), {}};
  for (Vertex v : keep) lists.available.push_back(inst.lists.available[v]);
  std::vector<Permutation> sigma;
  for (const auto& e : sub.edges()) {
    Permutation p;
    for (int c = 0; c < inst.k(); ++c) p.push_back(inst.image(keep[e.u], keep[e.v], c));
    sigma.push_back(std::move(p));
  }
  return CoverInstance(std::move(sub), std::move(lists), MatchingAssignment(inst.k(), std::move(sigma)));
}

}  // namespace detail

/// Exact search for a complete independent extension of `partial`.
inline std::optional<Transversal> find_transversal(const CoverInstance& inst, const Transversal& partial,
                                                   const SolverOptions& opt = {}, SolverStats* stats = nullptr) {
  if (!is_independent(inst, partial)) throw ContractViolation("find_transversal: partial coloring is not independent");
  detail::TransversalSearch s(inst, opt, stats);
  return s.run(partial);
}

inline std::optional<Transversal> find_transversal(const CoverInstance& inst) {
  return find_transversal(inst, Transversal(inst.order()));
}

/// Seeds the search with a coloring of the vertex set `fixed`.
inline std::optional<Transversal> extend_precoloring(const CoverInstance& inst, const std::vector<Vertex>& fixed,
                                                     const Transversal& phi, const SolverOptions& opt = {},
                                                     SolverStats* stats = nullptr) {
  Transversal seed(inst.order());
  for (Vertex v : fixed) {
    if (!phi.assigned(v)) throw ContractViolation("extend_precoloring: vertex " + std::to_string(v) + " has no color");
    seed.color[v] = phi.color[v];
  }
  if (!is_independent(inst, seed)) throw ContractViolation("extend_precoloring: precoloring is not independent");
  return find_transversal(inst, seed, opt, stats);
}

/// Splits along the first separating good 3-cycle: exterior plus cycle first, then the
/// interior with the cycle precolored. Falls back to plain search when the chosen
/// exterior coloring does not extend inward.
inline std::optional<Transversal> find_transversal_decomposed(const PlaneGraph& pg, const CoverInstance& inst,
                                                              const Transversal& partial, const SolverOptions& opt = {},
                                                              SolverStats* stats = nullptr) {
  SolverOptions plain = opt;
  plain.decompose_separating = false;
  for (const auto& tri : triangles(pg.graph())) {
    auto pred = cycle_predicates(pg, tri);
    if (!pred.separating || !pred.good()) continue;
    auto sides = pg.sides_of_cycle({tri[0], tri[1], tri[2]});
    std::vector<Vertex> outer_part;
    std::vector<char> inside(static_cast<std::size_t>(inst.order()), 0);
    for (Vertex v : sides.interior) inside[v] = 1;
    for (Vertex v = 0; v < inst.order(); ++v)
      if (!inside[v]) outer_part.push_back(v);
    bool precolored_inside = false;
    for (Vertex v : sides.interior) precolored_inside |= partial.assigned(v);
    if (precolored_inside) continue;

    auto outer_inst = detail::restrict_instance(inst, outer_part);
    Transversal outer_seed(static_cast<int>(outer_part.size()));
    for (std::size_t i = 0; i < outer_part.size(); ++i) outer_seed.color[i] = partial.color[outer_part[i]];
    auto outer_sol = find_transversal(outer_inst, outer_seed, plain, stats);
    if (!outer_sol) return std::nullopt;

    std::vector<Vertex> inner_part(tri.begin(), tri.end());
    inner_part.insert(inner_part.end(), sides.interior.begin(), sides.interior.end());
    auto inner_inst = detail::restrict_instance(inst, inner_part);
    Transversal inner_seed(static_cast<int>(inner_part.size()));
    std::map<Vertex, int> outer_color;
    for (std::size_t i = 0; i < outer_part.size(); ++i) outer_color[outer_part[i]] = outer_sol->color[i];
    for (int i = 0; i < 3; ++i) inner_seed.color[static_cast<std::size_t>(i)] = outer_color[tri[static_cast<std::size_t>(i)]];
    auto inner_sol = find_transversal(inner_inst, inner_seed, plain, stats);
    if (!inner_sol) break;

    Transversal out(inst.order());
    for (auto& [v, c] : outer_color) out.color[v] = c;
    for (std::size_t i = 0; i < inner_part.size(); ++i) out.color[inner_part[i]] = inner_sol->color[i];
    return out;
  }
  return find_transversal(inst, partial, plain, stats);
}

/// Visits every matching assignment that agrees with `fixed` (edge index ->
/// bijection). Free edges are taken in ascending index order with bijections in
/// lexicographic order, the last free edge varying fastest. The visitor returns
/// false to stop. `first_branch`/`branch_end` restrict the first free edge to a
/// range of its lexicographic ranks so workers can take disjoint sub-streams.
inline long long for_each_matching(const Graph& g, int k, const std::map<int, Permutation>& fixed,
                                   const std::function<bool(const MatchingAssignment&)>& visit,
                                   int first_branch = 0, int branch_end = -1) {
  std::vector<Permutation> sigma(static_cast<std::size_t>(g.size()), identity_permutation(k));
  std::vector<int> free;
  for (int e = 0; e < g.size(); ++e) {
    auto it = fixed.find(e);
    if (it == fixed.end()) free.push_back(e);
    else {
      if (!is_permutation_of(it->second, k)) throw ContractViolation("fixed matching is not a bijection");
      sigma[static_cast<std::size_t>(e)] = it->second;
    }
  }
  std::vector<Permutation> all;
  for (auto p = identity_permutation(k);; ) {
    all.push_back(p);
    if (!std::next_permutation(p.begin(), p.end())) break;
  }
  const int total = static_cast<int>(all.size());
  if (branch_end < 0) branch_end = total;
  long long count = 0;
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (stop) return;
    if (depth == free.size()) {
      ++count;
      MatchingAssignment m(k, sigma);
      if (!visit(m)) stop = true;
      return;
    }
    int lo = depth == 0 ? first_branch : 0, hi = depth == 0 ? branch_end : total;
    for (int i = lo; i < hi && !stop; ++i) {
      sigma[static_cast<std::size_t>(free[depth])] = all[static_cast<std::size_t>(i)];
      self(self, depth + 1);
    }
  };
  if (free.empty()) {
    if (first_branch == 0) {
      ++count;
      visit(MatchingAssignment(k, sigma));
    }
    return count;
  }
  rec(rec, 0);
  return count;
}

/// All matching assignments agreeing with `fixed`, materialized.
inline std::vector<MatchingAssignment> enumerate_matchings(const Graph& g, int k, const std::map<int, Permutation>& fixed) {
  std::vector<MatchingAssignment> out;
  for_each_matching(g, k, fixed, [&](const MatchingAssignment& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

}  // namespace dpc
