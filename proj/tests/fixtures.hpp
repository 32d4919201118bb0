#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dpc.hpp"

namespace fixture {

using dpc::Vertex;

/// Surrounds a plane graph with a ring: `spokes[b]` new edges leave boundary vertex
/// b towards the new outer cycle. The ring face between consecutive spokes at a and b
/// gets pad(a, b) extra vertices on its outer side, so its length is at least
/// 3 + pad. Needs two or more spokes.
inline dpc::PlaneGraph ringed(const dpc::PlaneGraph& inner, const std::vector<int>& spokes,
                              const std::function<int(Vertex, Vertex)>& pad_of) {
  const auto& walk = inner.outer().walk;
  std::vector<std::vector<Vertex>> faces;
  for (const auto& f : inner.faces())
    if (f.id != inner.outer_face()) faces.push_back(f.walk);

  int next = inner.order();
  std::vector<dpc::Edge> edges(inner.graph().edges().begin(), inner.graph().edges().end());
  struct Spoke {
    std::size_t pos;  // index into the boundary walk
    Vertex end;
  };
  std::vector<Spoke> sp;
  for (std::size_t i = 0; i < walk.size(); ++i)
    for (int s = 0; s < spokes.at(static_cast<std::size_t>(walk[i])); ++s) {
      sp.push_back({i, next});
      edges.emplace_back(walk[i], next++);
    }
  int requested = 0;
  for (int c : spokes) requested += c;
  if (requested != static_cast<int>(sp.size())) throw dpc::ContractViolation("ringed: spokes on a non-boundary vertex");
  if (sp.size() < 2) throw dpc::ContractViolation("ringed: needs at least two spokes");

  std::vector<Vertex> outer;
  for (std::size_t j = 0; j < sp.size(); ++j) {
    const Spoke& a = sp[j];
    const Spoke& b = sp[(j + 1) % sp.size()];
    std::vector<Vertex> pads;
    for (int p = pad_of(walk[a.pos], walk[b.pos]); p > 0; --p) pads.push_back(next++);
    // Outer side: a.end, pads..., b.end
    Vertex prev = a.end;
    outer.push_back(a.end);
    for (Vertex p : pads) {
      edges.emplace_back(prev, p);
      outer.push_back(p);
      prev = p;
    }
    edges.emplace_back(prev, b.end);
    // Ring face: boundary from a to b, then back along the outer side.
    std::vector<Vertex> f;
    std::size_t i = a.pos;
    f.push_back(walk[i]);
    // All spokes on one vertex: the last ring face runs around the whole boundary.
    const std::size_t steps = (b.pos + walk.size() - a.pos) % walk.size() +
                              (b.pos == a.pos && j + 1 == sp.size() ? walk.size() : 0);
    for (std::size_t s = 0; s < steps; ++s) {
      i = (i + 1) % walk.size();
      f.push_back(walk[i]);
    }
    f.push_back(b.end);
    for (auto it = pads.rbegin(); it != pads.rend(); ++it) f.push_back(*it);
    f.push_back(a.end);
    faces.push_back(f);
  }
  faces.push_back(outer);
  dpc::Graph g(next, std::span<const dpc::Edge>(edges));
  return dpc::PlaneGraph::from_faces(g, faces, outer);
}

inline dpc::PlaneGraph ringed(const dpc::PlaneGraph& inner, const std::vector<int>& spokes, int pad) {
  return ringed(inner, spokes, [pad](Vertex, Vertex) { return pad; });
}

/// The catalog shape drawn alone, then ringed.
inline dpc::PlaneGraph ringed_shape(int code, const std::string& spoke_roles, int pad) {
  const auto& shape = dpc::catalog_shape(code);
  std::vector<int> spokes(shape.labels.size(), 0);
  for (char c : spoke_roles) ++spokes[static_cast<std::size_t>(shape.role(c))];
  return ringed(dpc::shape_embedding(shape), spokes, pad);
}

}  // namespace fixture
