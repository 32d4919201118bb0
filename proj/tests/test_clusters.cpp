#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dpc;

TEST(ClusterCatalogTest, ShapesHaveExpectedSizes) {
  const std::vector<std::pair<int, int>> sizes = {{3, 1}, {4, 2}, {5, 3}, {5, 4}, {6, 4}, {6, 4},
                                                  {6, 4}, {6, 5}, {6, 5}, {6, 6}, {6, 7}};
  ASSERT_EQ(cluster_catalog().size(), 11u);
  for (int code = 1; code <= 11; ++code) {
    const auto& s = catalog_shape(code);
    EXPECT_EQ(s.code, code);
    EXPECT_EQ(s.vertex_count(), sizes[code - 1].first) << code;
    EXPECT_EQ(s.face_count(), sizes[code - 1].second) << code;
    EXPECT_FALSE(has_cycle_of_length(s.graph(), 7)) << code;
  }
  EXPECT_THROW(catalog_shape(12), ContractViolation);
}

TEST(ClusterCatalogTest, EachShapeClassifiesAsItself) {
  for (int code = 1; code <= 11; ++code) {
    auto pg = shape_embedding(catalog_shape(code));
    auto cs = extract_clusters(pg);
    ASSERT_EQ(cs.size(), 1u) << code;
    auto cls = classify_cluster(pg, cs[0]);
    EXPECT_EQ(cls.code, code);
    EXPECT_FALSE(cls.labelings.empty());
    // Every reported labeling maps the shape's faces onto the cluster's faces.
    const auto& shape = catalog_shape(code);
    for (const auto& r : cls.labelings)
      for (const auto& f : shape.faces) {
        Vertex a = r.at(shape.labels[f[0]]), b = r.at(shape.labels[f[1]]), c = r.at(shape.labels[f[2]]);
        EXPECT_TRUE(pg.graph().adjacent(a, b) && pg.graph().adjacent(b, c) && pg.graph().adjacent(a, c));
      }
  }
}

TEST(ClusterTest, OuterFaceNeverJoinsACluster) {
  std::vector<std::vector<Vertex>> faces = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
  auto pg = PlaneGraph::from_faces(complete_graph(4), faces, faces[0]);
  auto cs = extract_clusters(pg);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].k(), 3);
  EXPECT_EQ(cs[0].vertices.size(), 4u);
  // Three triangles around one vertex, closed up: no catalog shape has 4 vertices and 3 faces.
  EXPECT_EQ(classify_cluster(pg, cs[0]).code, 0);
}

TEST(ClusterTest, RingedShapesKeepOneClusterEach) {
  for (int code = 1; code <= 11; ++code) {
    auto inner = shape_embedding(catalog_shape(code));
    std::vector<int> spokes(static_cast<std::size_t>(inner.order()), 0);
    for (Vertex v : inner.outer().walk) spokes[v] = 1;
    auto pg = fixture::ringed(inner, spokes, 2);
    auto cs = extract_clusters(pg);
    ASSERT_EQ(cs.size(), 1u) << code;
    EXPECT_EQ(classify_cluster(pg, cs[0]).code, code);
  }
}

TEST(ClusterTest, SeparatedTrianglesAreDistinctClusters) {
  // Two triangles sharing only a vertex: vertex-adjacent faces stay apart.
  Graph g(5, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {0, 4}});
  PlaneGraph pg = PlaneGraph::from_faces(g, {{0, 1, 2}, {0, 3, 4}, {0, 2, 1, 0, 4, 3}});
  auto cs = extract_clusters(pg);
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(classify_cluster(pg, cs[0]).code, 1);
  EXPECT_EQ(classify_cluster(pg, cs[1]).code, 1);
}

TEST(ClusterTest, FiveSpokeWheelIsShapeEightAndSixSpokeWheelIsUnclassified) {
  auto wheel = [](int spokes) {
    std::vector<Edge> es;
    std::vector<std::vector<Vertex>> faces;
    std::vector<Vertex> rim;
    for (int i = 1; i <= spokes; ++i) {
      int j = i % spokes + 1;
      es.emplace_back(0, i);
      es.emplace_back(i, j);
      faces.push_back({0, i, j});
      rim.push_back(spokes + 1 - i);
    }
    faces.push_back(rim);
    return PlaneGraph::from_faces(Graph(spokes + 1, std::span<const Edge>(es)), faces, rim);
  };
  auto w5 = wheel(5);
  EXPECT_EQ(classify_cluster(w5, extract_clusters(w5).at(0)).code, 8);
  auto w6 = wheel(6);
  auto cs = extract_clusters(w6);
  ASSERT_EQ(cs.size(), 1u);
  auto cls = classify_cluster(w6, cs[0]);
  EXPECT_EQ(cls.code, 0);
  EXPECT_FALSE(cls.note.empty());
}

TEST(TriangleTest, BadIffBoundingTheSevenCluster) {
  // Shape (11) drawn alone: its outer boundary is a 3-cycle enclosing the 7-cluster.
  auto pg = shape_embedding(catalog_shape(11));
  ASSERT_EQ(pg.outer().degree(), 3);
  const auto& w = pg.outer().walk;
  auto p = cycle_predicates(pg, {w[0], w[1], w[2]});
  EXPECT_TRUE(p.bad);
  EXPECT_FALSE(p.separating);
  // Its inner triangles are faces, hence good.
  int good = 0;
  for (const auto& t : triangles(pg.graph())) good += cycle_predicates(pg, t).good();
  EXPECT_EQ(good, static_cast<int>(triangles(pg.graph()).size()) - 1);
}

TEST(TriangleTest, SeparatingTriangleInsideARing) {
  // K4 ringed: the original outer triangle now separates vertex 3 from the ring.
  std::vector<std::vector<Vertex>> faces = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
  auto k4 = PlaneGraph::from_faces(complete_graph(4), faces, faces[0]);
  auto pg = fixture::ringed(k4, {1, 1, 1, 0}, 2);
  auto p = cycle_predicates(pg, {0, 1, 2});
  EXPECT_TRUE(p.separating);
  EXPECT_TRUE(p.good());
  EXPECT_FALSE(cycle_predicates(pg, {0, 1, 3}).separating);
  EXPECT_THROW(cycle_predicates(pg, {0, 1, 4}), ContractViolation);
}

TEST(TriangleTest, EnumerationMatchesCycleCount) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    Graph g = oracle::random_graph(7, 0.5, rng);
    EXPECT_EQ(static_cast<long long>(triangles(g).size()), oracle::count_cycles(g, 3));
  }
}
