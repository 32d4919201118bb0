#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "dpc/plane_graph.hpp"

namespace dpc {

/// One entry of the catalog of clusters with distinct vertices in plane graphs
/// without 7-cycles. Vertex i of the shape carries role label labels[i].
struct ClusterShape {
  int code = 0;
  std::string labels;
  std::vector<std::array<int, 3>> faces;

  int vertex_count() const noexcept { return static_cast<int>(labels.size()); }
  int face_count() const noexcept { return static_cast<int>(faces.size()); }

  int role(char label) const {
    auto p = labels.find(label);
    if (p == std::string::npos) throw ContractViolation(std::string("shape has no role ") + label);
    return static_cast<int>(p);
  }

  std::vector<Edge> edges() const {
    std::set<Edge> s;
    for (const auto& f : faces)
      for (int i = 0; i < 3; ++i) s.emplace(f[i], f[(i + 1) % 3]);
    return {s.begin(), s.end()};
  }

  Graph graph() const {
    auto e = edges();
    return Graph(vertex_count(), std::span<const Edge>(e));
  }
};

namespace detail {

inline ClusterShape make_shape(int code, std::string labels, std::initializer_list<const char*> faces) {
  ClusterShape s{code, std::move(labels), {}};
  for (const char* f : faces) s.faces.push_back({s.role(f[0]), s.role(f[1]), s.role(f[2])});
  return s;
}

}  // namespace detail

/// The eleven shapes, codes 1..11. Codes 7, 9, 10, 11 carry the x, y, z roles used
/// by the special-cluster definition.
inline const std::vector<ClusterShape>& cluster_catalog() {
  using detail::make_shape;
  static const std::vector<ClusterShape> shapes = {
      make_shape(1, "uvw", {"uvw"}),
      make_shape(2, "uvxw", {"uvx", "wvx"}),
      make_shape(3, "uvwyx", {"xuv", "xvw", "xwy"}),
      make_shape(4, "uvwxy", {"yuv", "yvw", "ywx", "yxu"}),
      make_shape(5, "uvwxyz", {"uvw", "vwx", "wxy", "xyz"}),
      make_shape(6, "uvwxyz", {"zuv", "zvw", "zwx", "zxy"}),
      make_shape(7, "xyzuvw", {"xyz", "uxy", "vyz", "wzx"}),
      make_shape(8, "uvwxyz", {"zuv", "zvw", "zwx", "zxy", "zyu"}),
      make_shape(9, "xyuwzv", {"xyu", "xuw", "xwz", "xzy", "zvy"}),
      make_shape(10, "vuxwyz", {"yvu", "yux", "yxz", "zxw", "zwv", "zvy"}),
      make_shape(11, "uvwxyz", {"uvy", "vwz", "wux", "xyz", "uyx", "vzy", "wxz"}),
  };
  return shapes;
}

inline const ClusterShape& catalog_shape(int code) {
  if (code < 1 || code > 11) throw ContractViolation("catalog code out of range: " + std::to_string(code));
  return cluster_catalog()[static_cast<std::size_t>(code - 1)];
}

/// The shape drawn alone: its faces plus the boundary as the outer face.
inline PlaneGraph shape_embedding(const ClusterShape& shape) {
  Graph g = shape.graph();
  const std::size_t nf = shape.faces.size();
  std::vector<std::vector<Vertex>> walks(nf);
  std::vector<char> done(nf, 0);
  std::set<std::pair<Vertex, Vertex>> darts;
  walks[0] = {shape.faces[0][0], shape.faces[0][1], shape.faces[0][2]};
  done[0] = 1;
  for (int i = 0; i < 3; ++i) darts.emplace(walks[0][i], walks[0][(i + 1) % 3]);
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t f = 0; f < nf; ++f) {
      if (done[f]) continue;
      std::vector<Vertex> w{shape.faces[f][0], shape.faces[f][1], shape.faces[f][2]};
      int agree = 0, oppose = 0;
      for (int i = 0; i < 3; ++i) {
        agree += darts.count({w[i], w[(i + 1) % 3]}) > 0;
        oppose += darts.count({w[(i + 1) % 3], w[i]}) > 0;
      }
      if (agree + oppose == 0) continue;
      if (agree) std::swap(w[1], w[2]);
      for (int i = 0; i < 3; ++i) darts.emplace(w[i], w[(i + 1) % 3]);
      walks[f] = std::move(w);
      done[f] = 1;
      grew = true;
    }
  }
  std::map<Vertex, Vertex> boundary;
  for (const auto& e : g.edges()) {
    if (!darts.count({e.u, e.v})) boundary[e.u] = e.v;
    if (!darts.count({e.v, e.u})) boundary[e.v] = e.u;
  }
  std::vector<Vertex> outer;
  Vertex start = boundary.begin()->first, cur = start;
  do {
    outer.push_back(cur);
    cur = boundary.at(cur);
  } while (cur != start);
  walks.push_back(outer);
  return PlaneGraph::from_faces(g, walks, outer);
}

struct Cluster {
  int id = 0;
  std::vector<int> faces;      // 3-face ids, ascending
  std::vector<Vertex> vertices;
  std::vector<int> edges;      // edge indices of the host graph, ascending
  int k() const noexcept { return static_cast<int>(faces.size()); }

  bool contains_vertex(Vertex v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }
};

/// Role assignment: label -> host vertex.
using RoleMap = std::map<char, Vertex>;

struct ClusterClass {
  int code = 0;                 // 0: not in the catalog
  std::vector<RoleMap> labelings;  // every catalog isomorphism, first is canonical
  std::string note;

  bool classified() const noexcept { return code != 0; }
  const RoleMap& roles() const { return labelings.at(0); }
};

/// Gathers a cluster record (vertices, edges) for a set of 3-faces.
inline Cluster make_cluster(const PlaneGraph& pg, int id, std::vector<int> faces) {
  Cluster c;
  c.id = id;
  std::sort(faces.begin(), faces.end());
  c.faces = std::move(faces);
  std::set<Vertex> vs;
  std::set<int> es;
  for (int f : c.faces) {
    const auto& w = pg.face(f).walk;
    for (std::size_t i = 0; i < w.size(); ++i) {
      vs.insert(w[i]);
      es.insert(pg.graph().edge_index(w[i], w[(i + 1) % w.size()]));
    }
  }
  c.vertices.assign(vs.begin(), vs.end());
  c.edges.assign(es.begin(), es.end());
  return c;
}

/// Maximal edge-connected groups of 3-faces, outer face excluded.
inline std::vector<Cluster> extract_clusters(const PlaneGraph& pg) {
  const int nf = pg.face_count();
  std::vector<int> parent(static_cast<std::size_t>(nf));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto is_tri = [&](int f) { return f != pg.outer_face() && pg.face(f).degree() == 3; };
  for (int e = 0; e < pg.graph().size(); ++e) {
    auto [f, g] = pg.edge_faces(e);
    if (f != g && is_tri(f) && is_tri(g)) parent[find(f)] = find(g);
  }
  std::map<int, std::vector<int>> groups;
  for (int f = 0; f < nf; ++f)
    if (is_tri(f)) groups[find(f)].push_back(f);
  std::vector<std::vector<int>> sets;
  for (auto& [root, fs] : groups) sets.push_back(std::move(fs));
  std::sort(sets.begin(), sets.end());
  std::vector<Cluster> out;
  for (auto& fs : sets) out.push_back(make_cluster(pg, static_cast<int>(out.size()), std::move(fs)));
  return out;
}

/// Canonical match of the cluster's face-incidence structure against the catalog.
inline ClusterClass classify_cluster(const PlaneGraph& pg, const Cluster& c) {
  ClusterClass out;
  const int nv = static_cast<int>(c.vertices.size());
  std::set<std::array<Vertex, 3>> host;
  for (int f : c.faces) {
    auto w = pg.face(f).walk;
    std::array<Vertex, 3> t{w[0], w[1], w[2]};
    std::sort(t.begin(), t.end());
    host.insert(t);
  }
  for (const auto& shape : cluster_catalog()) {
    if (shape.vertex_count() != nv || shape.face_count() != c.k()) continue;
    std::vector<Vertex> perm = c.vertices;  // perm[i] plays shape vertex i
    do {
      bool ok = true;
      for (const auto& f : shape.faces) {
        std::array<Vertex, 3> t{perm[f[0]], perm[f[1]], perm[f[2]]};
        std::sort(t.begin(), t.end());
        if (!host.count(t)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        RoleMap r;
        for (int i = 0; i < nv; ++i) r[shape.labels[i]] = perm[i];
        out.labelings.push_back(std::move(r));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!out.labelings.empty()) {
      out.code = shape.code;
      return out;
    }
  }
  out.note = c.k() > 7 ? "more than seven 3-faces" : "no catalog shape matches (repeated vertex or shape outside the catalog)";
  return out;
}

struct TrianglePredicates {
  bool separating = false;
  bool bad = false;
  bool good() const noexcept { return !bad; }
};

/// Separating / bad / good for a 3-cycle of the plane graph.
inline TrianglePredicates cycle_predicates(const PlaneGraph& pg, const std::array<Vertex, 3>& tri) {
  const Graph& g = pg.graph();
  for (int i = 0; i < 3; ++i)
    if (!g.adjacent(tri[i], tri[(i + 1) % 3])) throw ContractViolation("cycle_predicates: not a triangle");
  auto sides = pg.sides_of_cycle({tri[0], tri[1], tri[2]});
  TrianglePredicates p;
  p.separating = !sides.interior.empty() && !sides.exterior.empty();
  if (sides.interior_faces.size() == 7 && sides.interior.size() == 3) {
    bool all_tri = std::all_of(sides.interior_faces.begin(), sides.interior_faces.end(),
                               [&](int f) { return pg.face(f).degree() == 3; });
    if (all_tri) p.bad = classify_cluster(pg, make_cluster(pg, -1, sides.interior_faces)).code == 11;
  }
  return p;
}

/// Every 3-cycle (a < b < c) of the graph.
inline std::vector<std::array<Vertex, 3>> triangles(const Graph& g) {
  std::vector<std::array<Vertex, 3>> out;
  for (const auto& e : g.edges())
    for (Vertex w : g.neighbors(e.v))
      if (w > e.v && g.adjacent(e.u, w)) out.push_back({e.u, e.v, w});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dpc
