#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace dpc;

namespace {

CoverInstance random_instance(const Graph& g, int k, std::mt19937_64& rng, bool random_lists) {
  ListAssignment lists = ListAssignment::full(g.order(), k);
  if (random_lists) {
    std::uniform_int_distribution<ColorMask> mask(1, full_mask(k));
    for (auto& m : lists.available) m = mask(rng);
  }
  return CoverInstance(g, lists, MatchingAssignment::random(g, k, rng));
}

Permutation shift(int k) {
  Permutation p;
  for (int c = 0; c < k; ++c) p.push_back((c + 1) % k);
  return p;
}

}  // namespace

TEST(PermutationTest, InverseAndMasks) {
  Permutation p = {2, 0, 3, 1};
  EXPECT_TRUE(is_permutation_of(p, 4));
  EXPECT_FALSE(is_permutation_of({0, 0, 1, 2}, 4));
  EXPECT_FALSE(is_permutation_of({0, 1, 2}, 4));
  auto q = inverse(p);
  for (int c = 0; c < 4; ++c) EXPECT_EQ(q[p[c]], c);
  EXPECT_EQ(permute_mask(p, 0b0011), ColorMask{0b0101});
  EXPECT_EQ(popcount(full_mask(4)), 4);
}

TEST(CoverTest, ConstructionChecksShapes) {
  Graph g = cycle_graph(3);
  EXPECT_THROW(CoverInstance(g, ListAssignment::full(2, 3), MatchingAssignment::identity(g, 3)), ContractViolation);
  EXPECT_THROW(CoverInstance(g, ListAssignment::full(3, 3), MatchingAssignment::identity(g, 4)), ContractViolation);
  EXPECT_THROW(CoverInstance(g, ListAssignment{3, {0b1111, 1, 1}}, MatchingAssignment::identity(g, 3)), ContractViolation);
  EXPECT_THROW(MatchingAssignment(3, {{0, 0, 1}}), ContractViolation);
}

TEST(CoverTest, ReversedQueryUsesInverse) {
  Graph g(2, {{0, 1}});
  CoverInstance inst(g, ListAssignment::full(2, 4), MatchingAssignment(4, {shift(4)}));
  for (int c = 0; c < 4; ++c) {
    EXPECT_EQ(inst.image(0, 1, c), (c + 1) % 4);
    EXPECT_EQ(inst.image(1, 0, (c + 1) % 4), c);
  }
  EXPECT_THROW(inst.image(0, 0, 1), ContractViolation);
}

TEST(CoverTest, IsStraight) {
  Graph g(3, {{0, 1}, {1, 2}});
  CoverInstance inst(g, ListAssignment::full(3, 4), MatchingAssignment(4, {identity_permutation(4), {1, 0, 2, 3}}));
  EXPECT_TRUE(is_straight(inst, 0, 1));
  EXPECT_FALSE(is_straight(inst, 2, 1));
  EXPECT_THROW(is_straight(inst, 0, 2), ContractViolation);
}

TEST(CoverTest, ResidualRemovesMatchedColors) {
  Graph g(3, {{0, 2}, {1, 2}});
  auto straight = CoverInstance::straight(g, 4);
  Transversal t(3);
  t.color = {0, 1, -1};
  EXPECT_EQ(residual(straight, t, 2), ColorMask{0b1100});

  Permutation to3 = {2, 0, 1, 3};  // 1 -> 3 on the names 1..4
  CoverInstance twisted(Graph(2, {{0, 1}}), ListAssignment::full(2, 4), MatchingAssignment(4, {to3}));
  Transversal u(2);
  u.color = {0, -1};
  EXPECT_EQ(residual(twisted, u, 1), ColorMask{0b1011});
  EXPECT_THROW(residual(twisted, u, 0), ContractViolation);
}

TEST(CoverTest, ResidualShrinksByAtMostTheColoredNeighbors) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    Graph g = oracle::random_graph(7, 0.5, rng);
    auto inst = random_instance(g, 4, rng, false);
    Transversal t(7);
    for (Vertex v = 1; v < 7; ++v)
      if (rng() % 2) t.color[v] = static_cast<int>(rng() % 4);
    int colored = 0;
    for (Vertex u : g.neighbors(0)) colored += t.assigned(u);
    EXPECT_GE(popcount(residual(inst, t, 0)), 4 - colored);
  }
}

TEST(StraightenTest, CyclicShiftBecomesIdentity) {
  Graph g(2, {{0, 1}});
  CoverInstance inst(g, ListAssignment::full(2, 4), MatchingAssignment(4, {shift(4)}));
  auto s = straighten(inst, {Edge(0, 1)});
  EXPECT_TRUE(is_straight(s.instance, 0, 1));
  EXPECT_TRUE(is_permutation_of(s.renaming[0], 4));
  EXPECT_TRUE(is_permutation_of(s.renaming[1], 4));
}

TEST(StraightenTest, EmptyForestChangesNothing) {
  std::mt19937_64 rng(2);
  auto inst = random_instance(cycle_graph(5), 4, rng, true);
  auto s = straighten(inst, {});
  for (const auto& r : s.renaming) EXPECT_EQ(r, identity_permutation(4));
  EXPECT_EQ(s.instance.lists.available, inst.lists.available);
  for (int e = 0; e < inst.graph.size(); ++e) EXPECT_EQ(s.instance.matchings.sigma(e), inst.matchings.sigma(e));
}

TEST(StraightenTest, RejectsCyclesAndNonEdges) {
  std::mt19937_64 rng(2);
  auto inst = random_instance(cycle_graph(3), 3, rng, false);
  EXPECT_THROW(straighten(inst, {Edge(0, 1), Edge(1, 2), Edge(0, 2)}), ContractViolation);
  auto path = random_instance(Graph(3, {{0, 1}, {1, 2}}), 3, rng, false);
  EXPECT_THROW(straighten(path, {Edge(0, 2)}), ContractViolation);
}

TEST(StraightenTest, RenamingConjugatesEveryEdge) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = oracle::random_graph(8, 0.4, rng);
    auto inst = random_instance(g, 4, rng, true);
    auto tree = oracle::random_spanning_forest(g, rng);
    auto s = straighten(inst, tree);
    for (const auto& e : tree) EXPECT_TRUE(is_straight(s.instance, e.u, e.v));
    for (int e = 0; e < g.size(); ++e) {
      const auto& ed = g.edge(e);
      for (int c = 0; c < 4; ++c)
        EXPECT_EQ(s.instance.matchings.sigma(e)[s.renaming[ed.u][c]], s.renaming[ed.v][inst.matchings.sigma(e)[c]]);
    }
    for (Vertex v = 0; v < g.order(); ++v)
      EXPECT_EQ(s.instance.lists.available[v], permute_mask(s.renaming[v], inst.lists.available[v]));
  }
}

TEST(SolverTest, SpecExamples) {
  Graph c3 = cycle_graph(3);
  EXPECT_FALSE(find_transversal(CoverInstance::straight(c3, 2)).has_value());

  std::vector<Permutation> one_twist = {identity_permutation(2), identity_permutation(2), {1, 0}};
  CoverInstance twisted(c3, ListAssignment::full(3, 2), MatchingAssignment(2, one_twist));
  auto t = find_transversal(twisted);
  ASSERT_TRUE(t.has_value());
  EXPECT_TRUE(is_independent(twisted, *t));
  EXPECT_TRUE(oracle::brute_force_transversal(twisted).has_value());

  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) EXPECT_TRUE(find_transversal(random_instance(c3, 4, rng, false)).has_value());
}

TEST(SolverTest, AgreesWithBruteForceOnSmallGraphs) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = 2 + trial % 5, k = 2 + trial % 2;
    Graph g = oracle::random_graph(n, 0.6, rng);
    auto inst = random_instance(g, k, rng, trial % 3 == 0);
    auto t = find_transversal(inst);
    auto ref = oracle::brute_force_transversal(inst);
    ASSERT_EQ(t.has_value(), ref.has_value()) << "trial " << trial;
    if (t) {
      EXPECT_TRUE(t->complete());
      EXPECT_TRUE(is_independent(inst, *t));
    }
  }
}

TEST(SolverTest, StraightInstancesAgreeWithListColoring) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1500; ++trial) {
    const int n = 3 + trial % 6, k = 2 + trial % 3;
    Graph g = oracle::random_graph(n, 0.55, rng);
    ListAssignment lists = ListAssignment::full(n, k);
    std::vector<std::vector<int>> plain(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
      lists.available[v] = std::uniform_int_distribution<ColorMask>(1, full_mask(k))(rng);
      for (int c = 0; c < k; ++c)
        if (lists.allows(v, c)) plain[v].push_back(c);
    }
    CoverInstance inst(g, lists, MatchingAssignment::identity(g, k));
    ASSERT_EQ(find_transversal(inst).has_value(), oracle::list_colorable(g, plain)) << "trial " << trial;
  }
}

TEST(SolverTest, OptionsDoNotChangeVerdicts) {
  std::mt19937_64 rng(8);
  SolverOptions plain;
  plain.degeneracy = false;
  for (int trial = 0; trial < 500; ++trial) {
    Graph g = oracle::random_graph(7, 0.5, rng);
    auto inst = random_instance(g, 3, rng, true);
    SolverStats a, b;
    auto x = find_transversal(inst, Transversal(7), {}, &a);
    auto y = find_transversal(inst, Transversal(7), plain, &b);
    ASSERT_EQ(x.has_value(), y.has_value());
    EXPECT_EQ(b.deferred, 0);
  }
}

TEST(SolverTest, DeterministicResult) {
  std::mt19937_64 rng(4);
  Graph g = oracle::random_graph(9, 0.4, rng);
  auto inst = random_instance(g, 4, rng, false);
  EXPECT_EQ(find_transversal(inst), find_transversal(inst));
}

TEST(SolverTest, MonotoneUnderShrinkingLists) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    Graph g = oracle::random_graph(6, 0.5, rng);
    auto big = random_instance(g, 3, rng, true);
    auto small = big;
    for (auto& m : small.lists.available) m &= static_cast<ColorMask>(rng());
    auto t = find_transversal(small);
    if (t) EXPECT_TRUE(is_independent(big, *t));
    if (!find_transversal(big)) EXPECT_FALSE(t.has_value());
  }
}

TEST(SolverTest, RejectsDependentPartial) {
  auto inst = CoverInstance::straight(cycle_graph(3), 3);
  Transversal t(3);
  t.color = {0, 0, -1};
  EXPECT_THROW(find_transversal(inst, t), ContractViolation);
}

TEST(PrecoloringTest, K4OuterTriangleForcesTheFourthColor) {
  auto inst = CoverInstance::straight(complete_graph(4), 4);
  Transversal phi(4);
  phi.color = {0, 1, 2, -1};
  auto t = extend_precoloring(inst, {0, 1, 2}, phi);
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(t->color, (std::vector<int>{0, 1, 2, 3}));
}

TEST(PrecoloringTest, EmptyPrecoloringIsPlainSearch) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    auto inst = random_instance(oracle::random_graph(7, 0.5, rng), 3, rng, true);
    EXPECT_EQ(extend_precoloring(inst, {}, Transversal(7)), find_transversal(inst));
  }
}

TEST(PrecoloringTest, ExtensionsAgreeWithBruteForce) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 600; ++trial) {
    Graph g = oracle::random_graph(6, 0.55, rng);
    auto inst = random_instance(g, 3, rng, false);
    Transversal phi(6);
    phi.color[0] = static_cast<int>(rng() % 3);
    phi.color[1] = static_cast<int>(rng() % 3);
    if (!is_independent(inst, phi)) {
      EXPECT_THROW(extend_precoloring(inst, {0, 1}, phi), ContractViolation);
      continue;
    }
    std::vector<int> fixed(6, -1);
    fixed[0] = phi.color[0];
    fixed[1] = phi.color[1];
    auto t = extend_precoloring(inst, {0, 1}, phi);
    ASSERT_EQ(t.has_value(), oracle::brute_force_transversal(inst, fixed).has_value());
    if (t) {
      EXPECT_EQ(t->color[0], phi.color[0]);
      EXPECT_EQ(t->color[1], phi.color[1]);
    }
  }
}

TEST(PrecoloringTest, DecompositionAgreesWithPlainSearch) {
  std::mt19937_64 rng(12);
  GenerateOptions opt;
  opt.vertices = 12;
  for (int trial = 0; trial < 80; ++trial) {
    auto pg = random_plane_graph(opt, rng);
    CoverInstance inst(pg.graph(), ListAssignment::full(pg.order(), 3), MatchingAssignment::random(pg.graph(), 3, rng));
    SolverOptions dec;
    dec.decompose_separating = true;
    auto a = find_transversal_decomposed(pg, inst, Transversal(pg.order()), dec);
    auto b = find_transversal(inst);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) EXPECT_TRUE(is_independent(inst, *a));
  }
}

TEST(MatchingEnumerationTest, Counts) {
  Graph edge(2, {{0, 1}});
  EXPECT_EQ(enumerate_matchings(edge, 2, {}).size(), 2u);
  Graph c3 = cycle_graph(3);
  EXPECT_EQ(enumerate_matchings(c3, 2, {{0, identity_permutation(2)}, {1, identity_permutation(2)}}).size(), 2u);
  EXPECT_EQ(enumerate_matchings(c3, 4, {{0, identity_permutation(4)}, {1, identity_permutation(4)}}).size(), 24u);
  EXPECT_EQ(enumerate_matchings(c3, 3, {}).size(), 216u);
}

TEST(MatchingEnumerationTest, EachAssignmentOnceAndBranchesPartition) {
  Graph g(3, {{0, 1}, {1, 2}});
  std::set<std::vector<Permutation>> seen;
  for_each_matching(g, 3, {}, [&](const MatchingAssignment& m) {
    EXPECT_TRUE(seen.insert({m.sigma(0), m.sigma(1)}).second);
    return true;
  });
  EXPECT_EQ(seen.size(), 36u);
  long long a = for_each_matching(g, 3, {}, [](const MatchingAssignment&) { return true; }, 0, 2);
  long long b = for_each_matching(g, 3, {}, [](const MatchingAssignment&) { return true; }, 2, 6);
  EXPECT_EQ(a + b, 36);
  EXPECT_EQ(a, 12);
}
