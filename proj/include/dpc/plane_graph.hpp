#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dpc/graph.hpp"

namespace dpc {

struct Face {
  int id = 0;
  std::vector<Vertex> walk;  // cyclic; walk[i] -> walk[i+1] are the face's darts
  int degree() const noexcept { return static_cast<int>(walk.size()); }
};

/// Smallest cyclic rotation of a walk, used to compare boundary walks.
inline std::vector<Vertex> canonical_rotation(const std::vector<Vertex>& walk) {
  if (walk.empty()) return walk;
  std::vector<Vertex> best = walk;
  std::vector<Vertex> cur = walk;
  for (std::size_t i = 1; i < walk.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

/// Vertices strictly inside / outside a cycle, relative to the outer face.
struct CycleSides {
  std::vector<Vertex> interior;
  std::vector<Vertex> exterior;
  std::vector<int> interior_faces;
};

/// A simple graph together with a rotation system. The dart u->v is followed on
/// its face by v->w where w is the successor of u in the rotation at v.
class PlaneGraph {
 public:
  PlaneGraph() = default;

  PlaneGraph(Graph g, std::vector<std::vector<Vertex>> rotation,
             std::optional<std::vector<Vertex>> outer_walk = std::nullopt)
      : graph_(std::move(g)), rotation_(std::move(rotation)) {
    validate_rotation();
    trace_faces();
    select_outer(outer_walk);
  }

  /// Builds the rotation system from consistently oriented face walks
  /// (every dart must occur in exactly one walk).
  static PlaneGraph from_faces(const Graph& g, const std::vector<std::vector<Vertex>>& walks,
                               std::optional<std::vector<Vertex>> outer_walk = std::nullopt) {
    const int n = g.order();
    std::vector<std::map<Vertex, Vertex>> succ(static_cast<std::size_t>(n));
    for (const auto& w : walks) {
      const std::size_t d = w.size();
      for (std::size_t i = 0; i < d; ++i) {
        Vertex a = w[i], v = w[(i + 1) % d], b = w[(i + 2) % d];
        if (!g.adjacent(a, v) || !g.adjacent(v, b))
          throw MalformedEmbedding("face walk uses a non-edge at vertex " + std::to_string(v));
        if (!succ[v].emplace(a, b).second)
          throw MalformedEmbedding("dart " + std::to_string(a) + "->" + std::to_string(v) + " on two faces");
      }
    }
    std::vector<std::vector<Vertex>> rot(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
      if (g.degree(v) == 0) continue;
      if (static_cast<int>(succ[v].size()) != g.degree(v))
        throw MalformedEmbedding("faces do not cover every dart into vertex " + std::to_string(v));
      Vertex start = g.neighbors(v).front(), cur = start;
      do {
        rot[v].push_back(cur);
        cur = succ[v].at(cur);
      } while (cur != start && rot[v].size() <= succ[v].size());
      if (static_cast<int>(rot[v].size()) != g.degree(v))
        throw MalformedEmbedding("faces around vertex " + std::to_string(v) + " do not form one disk");
    }
    return PlaneGraph(g, std::move(rot), std::move(outer_walk));
  }

  const Graph& graph() const noexcept { return graph_; }
  int order() const noexcept { return graph_.order(); }
  const std::vector<std::vector<Vertex>>& rotation() const noexcept { return rotation_; }
  const std::vector<Vertex>& rotation(Vertex v) const { return rotation_.at(static_cast<std::size_t>(v)); }

  const std::vector<Face>& faces() const noexcept { return faces_; }
  const Face& face(int id) const { return faces_.at(static_cast<std::size_t>(id)); }
  int face_count() const noexcept { return static_cast<int>(faces_.size()); }
  int outer_face() const noexcept { return outer_; }
  const Face& outer() const { return face(outer_); }

  /// Face on the left of dart a->b (the face whose walk contains a, b consecutively).
  int face_of_dart(Vertex a, Vertex b) const { return dart_face_.at(dart_id(a, b)); }

  /// The (one or two) faces incident with edge index e.
  std::pair<int, int> edge_faces(int e) const {
    const Edge& ed = graph_.edge(e);
    return {face_of_dart(ed.u, ed.v), face_of_dart(ed.v, ed.u)};
  }

  /// Successor of u in the rotation at v.
  Vertex succ(Vertex v, Vertex u) const {
    const auto& r = rotation(v);
    return r[(pos_.at(key(v, u)) + 1) % r.size()];
  }

  /// Faces around v, in rotation order (face i lies between rotation[i] and rotation[i+1]).
  std::vector<int> faces_around(Vertex v) const {
    std::vector<int> out;
    const auto& r = rotation(v);
    for (std::size_t i = 0; i < r.size(); ++i) out.push_back(face_of_dart(r[(i + 1) % r.size()], v));
    return out;
  }

  /// Interior/exterior of a cycle given as a cyclic vertex sequence. The exterior is
  /// the side containing the outer face.
  CycleSides sides_of_cycle(const std::vector<Vertex>& cycle) const {
    std::set<std::pair<Vertex, Vertex>> cyc;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Edge e(cycle[i], cycle[(i + 1) % cycle.size()]);
      if (!graph_.adjacent(e.u, e.v)) throw ContractViolation("sides_of_cycle: not a cycle of the graph");
      cyc.emplace(e.u, e.v);
    }
    std::vector<char> outside(faces_.size(), 0);
    std::vector<int> stack{outer_};
    outside[outer_] = 1;
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      const auto& w = faces_[f].walk;
      for (std::size_t i = 0; i < w.size(); ++i) {
        Vertex a = w[i], b = w[(i + 1) % w.size()];
        if (cyc.count({std::min(a, b), std::max(a, b)})) continue;
        int g = face_of_dart(b, a);
        if (!outside[g]) {
          outside[g] = 1;
          stack.push_back(g);
        }
      }
    }
    std::set<Vertex> on_cycle(cycle.begin(), cycle.end());
    std::vector<char> in(static_cast<std::size_t>(order()), 0), out(static_cast<std::size_t>(order()), 0);
    CycleSides s;
    for (const auto& f : faces_) {
      if (!outside[f.id]) s.interior_faces.push_back(f.id);
      for (Vertex v : f.walk)
        if (!on_cycle.count(v)) (outside[f.id] ? out : in)[v] = 1;
    }
    for (Vertex v = 0; v < order(); ++v) {
      if (on_cycle.count(v)) continue;
      if (in[v]) s.interior.push_back(v);
      else if (out[v] || graph_.degree(v) == 0) s.exterior.push_back(v);
    }
    return s;
  }

  /// Vertices on the outer face boundary.
  std::vector<Vertex> outer_vertices() const {
    std::vector<Vertex> v = outer().walk;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

 private:
  static std::uint64_t key(Vertex v, Vertex u) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) << 32) | static_cast<std::uint32_t>(u);
  }

  std::size_t dart_id(Vertex a, Vertex b) const {
    auto it = pos_.find(key(a, b));
    if (it == pos_.end()) throw ContractViolation("no dart " + std::to_string(a) + "->" + std::to_string(b));
    return offset_[a] + it->second;
  }

  void validate_rotation() {
    const int n = graph_.order();
    if (static_cast<int>(rotation_.size()) != n)
      throw MalformedEmbedding("rotation lists " + std::to_string(rotation_.size()) + " vertices, graph has " +
                               std::to_string(n));
    offset_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (Vertex v = 0; v < n; ++v) {
      std::vector<Vertex> r = rotation_[v];
      std::sort(r.begin(), r.end());
      if (r != graph_.neighbors(v))
        throw MalformedEmbedding("rotation at vertex " + std::to_string(v) + " does not list exactly its neighbors");
      for (std::size_t i = 0; i < rotation_[v].size(); ++i) pos_[key(v, rotation_[v][i])] = i;
      offset_[v + 1] = offset_[v] + rotation_[v].size();
    }
  }

  void trace_faces() {
    dart_face_.assign(offset_.back(), -1);
    for (Vertex a = 0; a < graph_.order(); ++a) {
      for (Vertex b : rotation_[a]) {
        if (dart_face_[dart_id(a, b)] >= 0) continue;
        Face f;
        f.id = static_cast<int>(faces_.size());
        Vertex x = a, y = b;
        while (dart_face_[dart_id(x, y)] < 0) {
          dart_face_[dart_id(x, y)] = f.id;
          f.walk.push_back(x);
          Vertex z = succ(y, x);
          x = y;
          y = z;
        }
        faces_.push_back(std::move(f));
      }
    }
  }

  void select_outer(const std::optional<std::vector<Vertex>>& walk) {
    if (faces_.empty()) {
      outer_ = -1;
      return;
    }
    if (walk) {
      // Exact orientation first; a reversed walk is accepted when nothing matches exactly.
      auto reversed = std::vector<Vertex>(walk->rbegin(), walk->rend());
      for (const auto& want : {canonical_rotation(*walk), canonical_rotation(reversed)})
        for (const auto& f : faces_)
          if (canonical_rotation(f.walk) == want) {
            outer_ = f.id;
            return;
          }
      throw MalformedEmbedding("outer_face walk is not a face of the embedding");
    }
    outer_ = 0;
    for (const auto& f : faces_) {
      const auto& best = faces_[outer_];
      if (f.degree() > best.degree() ||
          (f.degree() == best.degree() && canonical_rotation(f.walk) < canonical_rotation(best.walk)))
        outer_ = f.id;
    }
  }

  Graph graph_;
  std::vector<std::vector<Vertex>> rotation_;
  std::unordered_map<std::uint64_t, std::size_t> pos_;
  std::vector<std::size_t> offset_;
  std::vector<int> dart_face_;
  std::vector<Face> faces_;
  int outer_ = -1;
};

}  // namespace dpc
