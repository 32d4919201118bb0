#pragma once

#include <random>
#include <set>
#include <vector>

#include "dpc/patterns.hpp"
#include "dpc/plane_graph.hpp"

namespace dpc {

struct GenerateOptions {
  int vertices = 10;
  int max_attempts = 400;        // rejected growth steps tolerated before giving up
  double chord_probability = 0.3;
  bool forbid_seven_cycles = true;
  bool forbid_butterflies = true;
};

/// Random 2-connected plane graph with outer triangle 0-1-2, grown by inserting a
/// vertex into a face (joined to two or more boundary vertices) or adding a chord.
/// Steps creating a 7-cycle or a butterfly are rolled back. The result may have
/// fewer vertices than requested when growth stalls.
template <class Rng>
PlaneGraph random_plane_graph(const GenerateOptions& opt, Rng& rng) {
  std::vector<std::vector<Vertex>> faces = {{0, 1, 2}, {0, 2, 1}};  // faces[1] is the outer face
  std::set<Edge> edges = {{0, 1}, {1, 2}, {0, 2}};
  int n = 3;

  auto acceptable = [&](int order, const std::set<Edge>& es) {
    std::vector<Edge> list(es.begin(), es.end());
    Graph g(order, std::span<const Edge>(list));
    if (opt.forbid_seven_cycles && has_cycle_of_length(g, 7)) return false;
    if (opt.forbid_butterflies && contains_pattern(g, butterfly_graph())) return false;
    return true;
  };
  auto pick = [&](std::size_t bound) { return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng); };

  for (int attempts = 0; n < opt.vertices && attempts < opt.max_attempts; ++attempts) {
    std::size_t fi = faces.size() == 2 ? 0 : pick(faces.size());
    if (fi == 1) continue;
    const auto face = faces[fi];
    const std::size_t d = face.size();
    auto next_faces = faces;
    auto next_edges = edges;
    int next_n = n;

    if (d >= 4 && std::uniform_real_distribution<double>(0, 1)(rng) < opt.chord_probability) {
      std::size_t i = pick(d), j = pick(d);
      if (i > j) std::swap(i, j);
      if (j - i < 2 || (i == 0 && j == d - 1)) continue;
      if (edges.count(Edge(face[i], face[j]))) continue;
      next_edges.insert(Edge(face[i], face[j]));
      std::vector<Vertex> a(face.begin() + static_cast<std::ptrdiff_t>(i), face.begin() + static_cast<std::ptrdiff_t>(j) + 1);
      std::vector<Vertex> b(face.begin() + static_cast<std::ptrdiff_t>(j), face.end());
      b.insert(b.end(), face.begin(), face.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      next_faces[fi] = a;
      next_faces.push_back(b);
    } else {
      // Join a new vertex to m >= 2 boundary positions, splitting the face into m faces.
      std::size_t m = 2 + pick(std::min<std::size_t>(d, 4) - 1);
      std::vector<std::size_t> pos(d);
      for (std::size_t i = 0; i < d; ++i) pos[i] = i;
      std::shuffle(pos.begin(), pos.end(), rng);
      pos.resize(m);
      std::sort(pos.begin(), pos.end());
      const Vertex nv = next_n++;
      std::vector<std::vector<Vertex>> parts;
      for (std::size_t s = 0; s < m; ++s) {
        std::size_t from = pos[s], to = pos[(s + 1) % m];
        std::vector<Vertex> part;
        for (std::size_t i = from;; i = (i + 1) % d) {
          part.push_back(face[i]);
          if (i == to) break;
        }
        part.push_back(nv);
        parts.push_back(std::move(part));
      }
      for (std::size_t s = 0; s < m; ++s) next_edges.insert(Edge(nv, face[pos[s]]));
      next_faces[fi] = parts[0];
      for (std::size_t s = 1; s < m; ++s) next_faces.push_back(parts[s]);
    }
    if (!acceptable(next_n, next_edges)) continue;
    faces = std::move(next_faces);
    edges = std::move(next_edges);
    n = next_n;
  }
  std::vector<Edge> list(edges.begin(), edges.end());
  Graph g(n, std::span<const Edge>(list));
  return PlaneGraph::from_faces(g, faces, faces[1]);
}

}  // namespace dpc
