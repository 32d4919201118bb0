#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dpc;

namespace {

PlaneGraph k4_plane() {
  std::vector<std::vector<Vertex>> faces = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
  return PlaneGraph::from_faces(complete_graph(4), faces, faces[0]);
}

const Check& find_check(const std::vector<Check>& checks, const std::string& name) {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const Check& c) { return c.name == name; });
  if (it == checks.end()) throw std::runtime_error("no check " + name);
  return *it;
}

Quarters sum_of(const std::vector<Transfer>& ts, const std::string& rule, const std::string& from,
                const std::string& to) {
  Quarters q = 0;
  for (const auto& t : ts)
    if (t.rule == rule && t.from == from && t.to == to) q += t.amount;
  return q;
}

// Outer charge predicted from degrees alone: the outer face keeps d(C) + 4, gains
// d(v) - 4 from each outer vertex and pays 1 per inner 3-face touching the boundary.
Quarters predicted_outer(const PlaneGraph& pg) {
  std::set<Vertex> boundary(pg.outer().walk.begin(), pg.outer().walk.end());
  Quarters q = 4 * (pg.outer().degree() + 4);
  for (Vertex v : boundary) q += 4 * (pg.graph().degree(v) - 4);
  for (const auto& f : pg.faces()) {
    if (f.id == pg.outer_face() || f.degree() != 3) continue;
    if (std::any_of(f.walk.begin(), f.walk.end(), [&](Vertex v) { return boundary.count(v) > 0; })) q -= 4;
  }
  return q;
}

}  // namespace

TEST(QuartersTest, Formatting) {
  EXPECT_EQ(format_quarters(0), "0");
  EXPECT_EQ(format_quarters(4), "1");
  EXPECT_EQ(format_quarters(1), "1/4");
  EXPECT_EQ(format_quarters(2), "1/2");
  EXPECT_EQ(format_quarters(6), "3/2");
  EXPECT_EQ(format_quarters(-4), "-1");
  EXPECT_EQ(format_quarters(-3), "-3/4");
}

TEST(LedgerTest, TransfersAreItemizedAndConserve) {
  ChargeLedger l;
  l.open("a", 8);
  l.open("b", -4);
  EXPECT_THROW(l.open("a", 0), ContractViolation);
  l.transfer("X", "a", "b", 3, "test");
  EXPECT_EQ(l.balance("a"), 5);
  EXPECT_EQ(l.balance("b"), -1);
  EXPECT_EQ(l.initial("a"), 8);
  EXPECT_EQ(l.total(), 4);
  EXPECT_EQ(l.history("b").size(), 1u);
  EXPECT_THROW(l.transfer("X", "a", "zz", 1), ContractViolation);
}

TEST(ChargeTest, InitialChargesOfK4) {
  auto pg = k4_plane();
  auto l = initial_charges(pg);
  for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(l.balance(vertex_id(v)), -4);
  int faces = 0;
  for (const auto& f : pg.faces())
    if (f.id != pg.outer_face()) {
      EXPECT_EQ(l.balance(face_id(f.id)), -4);
      ++faces;
    }
  EXPECT_EQ(faces, 3);
  EXPECT_EQ(l.balance(kOuter), 28);
  EXPECT_EQ(l.total(), 0);
}

TEST(ChargeTest, FiveVertexStartsAtOne) {
  auto pg = fixture::ringed_shape(2, "uuuvxw", 2);
  auto l = initial_charges(pg);
  const Vertex u = catalog_shape(2).role('u');
  EXPECT_EQ(pg.graph().degree(u), 5);
  EXPECT_EQ(l.balance(vertex_id(u)), 4);
}

TEST(ChargeTest, SumIsZeroBeforeAndAfterRules) {
  std::mt19937_64 rng(17);
  GenerateOptions opt;
  for (int i = 0; i < 80; ++i) {
    opt.vertices = 5 + i % 10;
    auto pg = random_plane_graph(opt, rng);
    auto rep = audit(pg);
    EXPECT_EQ(rep.initial_sum, 0);
    EXPECT_EQ(rep.final_sum, 0);
    EXPECT_TRUE(rep.clusters_start_at_minus_k);
    EXPECT_TRUE(rep.cap_violations.empty());
    ASSERT_TRUE(rep.outer_identity.applicable);
    EXPECT_TRUE(rep.outer_identity.holds());
    EXPECT_EQ(rep.outer_identity.ledger_value, predicted_outer(pg));
  }
}

TEST(TypingTest, SpecialClusterNeedsInternalFourVerticesXYZ) {
  auto special = fixture::ringed_shape(9, "uuwwvv", 2);
  auto cs = extract_clusters(special);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_TRUE(classify_special_cluster(special, cs[0]));

  // x is interior to the shape; a spoke on z makes it a 5-vertex under either labeling.
  EXPECT_THROW(fixture::ringed_shape(9, "uuwwvvx", 2), dpc::ContractViolation);
  auto spoked = fixture::ringed_shape(9, "uuwwvvz", 2);
  EXPECT_FALSE(classify_special_cluster(spoked, extract_clusters(spoked).at(0)));

  // Shape 3 is never special.
  auto three = fixture::ringed_shape(3, "uuvvwwyy", 2);
  EXPECT_FALSE(classify_special_cluster(three, extract_clusters(three).at(0)));
}

TEST(TypingTest, ThreeTypeVerticesGoodOnlyOnSpecialClusters) {
  auto nine = fixture::ringed_shape(9, "uuwwvv", 2);
  auto t9 = vertex_typing(nine);
  const Vertex u = catalog_shape(9).role('u');
  ASSERT_EQ(nine.graph().degree(u), 5);
  const auto* m = t9.membership(u, 0);
  ASSERT_NE(m, nullptr);
  EXPECT_EQ(m->i_type, 3);
  EXPECT_TRUE(m->good);

  auto eight = fixture::ringed_shape(8, "uuvvwwxxyy", 2);
  auto t8 = vertex_typing(eight);
  const Vertex v = catalog_shape(8).role('v');
  ASSERT_GE(eight.graph().degree(v), 5);
  const auto* n = t8.membership(v, 0);
  ASSERT_NE(n, nullptr);
  EXPECT_EQ(n->i_type, 3);
  EXPECT_FALSE(n->good);
}

TEST(RuleTest, FaceRuleGivesHalfPerTriangleAndQuarterPerEndpoint) {
  auto pg = fixture::ringed_shape(2, "uvwx", 4);
  auto rep = audit(pg);
  const auto& ts = rep.ledger.transfers();
  for (const auto& f : pg.faces()) {
    if (f.id == pg.outer_face() || f.degree() < 5) continue;
    Quarters expected = 0;
    for (std::size_t i = 0; i < f.walk.size(); ++i) {
      Vertex a = f.walk[i], b = f.walk[(i + 1) % f.walk.size()];
      int other = pg.face_of_dart(b, a);
      if (other != pg.outer_face() && pg.face(other).degree() == 3) expected += 2;
      else if (!(other == pg.outer_face() && pg.outer().degree() == 3))
        for (Vertex x : {a, b}) expected += !std::count(pg.outer().walk.begin(), pg.outer().walk.end(), x);
    }
    Quarters given = 0;
    for (const auto& t : ts)
      if (t.rule == "R1a" && t.from == face_id(f.id)) given += t.amount;
    EXPECT_EQ(given, expected) << face_id(f.id);
    EXPECT_GE(rep.ledger.balance(face_id(f.id)), 0);
  }
}

TEST(RuleTest, FourVertexPassesFaceCreditToItsCluster) {
  // Diamond ringed with long faces: v and x are 4-vertices of 3-type.
  auto pg = fixture::ringed_shape(2, "uvwx", 4);
  auto rep = audit(pg);
  const auto& s = catalog_shape(2);
  for (char role : {'v', 'x'}) {
    Vertex v = s.role(role);
    ASSERT_EQ(pg.graph().degree(v), 4);
    Quarters received = 0;
    for (const auto& t : rep.ledger.transfers())
      if (t.rule == "R1a" && t.to == vertex_id(v)) received += t.amount;
    EXPECT_EQ(received, 2);
    EXPECT_EQ(sum_of(rep.ledger.transfers(), "R1b", vertex_id(v), cluster_id(0)), received);
    EXPECT_EQ(rep.ledger.balance(vertex_id(v)), 0);
  }
}

TEST(RuleTest, SixClusterRule) {
  auto pg = fixture::ringed_shape(10, "vvuuww", 2);
  auto rep = audit(pg);
  const auto& s = catalog_shape(10);
  const auto& ts = rep.ledger.transfers();
  EXPECT_EQ(sum_of(ts, "R3", vertex_id(s.role('v')), cluster_id(0)), 8);
  EXPECT_EQ(sum_of(ts, "R3", vertex_id(s.role('u')), cluster_id(0)), 4);
  EXPECT_EQ(sum_of(ts, "R3", vertex_id(s.role('w')), cluster_id(0)), 4);
  EXPECT_EQ(rep.ledger.balance(cluster_id(0)), 0);
  EXPECT_TRUE(rep.rule_error.empty());
}

TEST(RuleTest, FourFaceNextToLargeClusterIsAnError) {
  auto pg = fixture::ringed_shape(3, "uvwyx", 0);
  auto rep = audit(pg);
  EXPECT_FALSE(rep.rule_error.empty());
  EXPECT_EQ(rep.verdict, "HYPOTHESIS_VIOLATION");
  auto t = vertex_typing(pg);
  auto l = initial_charges(pg);
  aggregate_clusters(pg, t, l);
  EXPECT_THROW(apply_rules(pg, t, l), AuditError);
}

TEST(RuleTest, FourFaceBranchIsNoted) {
  // A bad 2-type 5-vertex u of a diamond, on a 4-face sharing an edge with it.
  const auto& s = catalog_shape(2);
  const Vertex u = s.role('u');
  std::vector<int> spokes(4, 0);
  for (char c : std::string("uuuvxw")) ++spokes[static_cast<std::size_t>(s.role(c))];
  auto pg = fixture::ringed(shape_embedding(s), spokes, [&](Vertex a, Vertex b) { return (a == u) != (b == u) ? 0 : 2; });
  auto t = vertex_typing(pg);
  const auto* m = t.membership(u, 0);
  ASSERT_NE(m, nullptr);
  EXPECT_EQ(m->i_type, 2);
  EXPECT_FALSE(m->good);
  auto rep = audit(pg);
  EXPECT_TRUE(rep.rule_error.empty());
  EXPECT_EQ(sum_of(rep.ledger.transfers(), "R2", vertex_id(u), cluster_id(0)), 2);
  ASSERT_EQ(rep.notes.size(), 1u);
  EXPECT_NE(rep.notes[0].find("four-face"), std::string::npos);

  // Without the 4-face the bad 2-type vertex gives nothing.
  auto far = fixture::ringed_shape(2, "uuuvxw", 2);
  auto rep2 = audit(far);
  EXPECT_EQ(sum_of(rep2.ledger.transfers(), "R2", vertex_id(u), cluster_id(0)), 0);
  EXPECT_TRUE(rep2.notes.empty());
}

TEST(RuleTest, RuleOrderDoesNotChangeBalances) {
  std::mt19937_64 rng(23);
  GenerateOptions opt;
  std::vector<PlaneGraph> graphs = {fixture::ringed_shape(10, "vvuuww", 2), fixture::ringed_shape(2, "uvwx", 4),
                                    fixture::ringed_shape(9, "uuwwvv", 2)};
  for (int i = 0; i < 3; ++i) {
    opt.vertices = 9 + i;
    graphs.push_back(random_plane_graph(opt, rng));
  }
  for (const auto& pg : graphs) {
    auto base = audit(pg);
    if (!base.rule_error.empty()) continue;
    auto order = default_rule_order();
    std::sort(order.begin(), order.end());
    int count = 0;
    do {
      auto rep = audit(pg, order);
      ASSERT_TRUE(rep.ledger == base.ledger);
      ++count;
    } while (std::next_permutation(order.begin(), order.end()));
    EXPECT_EQ(count, 720);
  }
}

TEST(RuleTest, CapViolationIsReported) {
  auto pg = fixture::ringed_shape(10, "vvuuww", 2);
  auto t = vertex_typing(pg);
  auto l = initial_charges(pg);
  aggregate_clusters(pg, t, l);
  apply_rules(pg, t, l);
  EXPECT_TRUE(cap_violations(pg, t, l).empty());
  const Vertex u = catalog_shape(10).role('u');
  l.transfer("R3", vertex_id(u), cluster_id(0), 4);
  auto v = cap_violations(pg, t, l);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find(vertex_id(u)), std::string::npos);
}

TEST(AuditTest, OuterIdentityOnRings) {
  for (auto pg : {fixture::ringed_shape(10, "vvuuww", 2), fixture::ringed_shape(2, "uvwx", 4)}) {
    auto rep = audit(pg);
    // Ring outer faces are long, so the identity does not apply.
    EXPECT_FALSE(rep.outer_identity.applicable);
    EXPECT_EQ(rep.ledger.balance(kOuter), predicted_outer(pg));
  }
}

TEST(AuditTest, K4FailsMinimumDegree) {
  auto rep = audit(k4_plane());
  EXPECT_FALSE(find_check(rep.lemma_preconditions, "internal_min_degree_4").ok);
  EXPECT_TRUE(find_check(rep.class_checks, "no_7_cycle").ok);
  EXPECT_TRUE(find_check(rep.class_checks, "outer_good_triangle").ok);
  EXPECT_EQ(rep.verdict, "HYPOTHESIS_VIOLATION");
  EXPECT_FALSE(rep.hypotheses_hold());
}

TEST(AuditTest, SevenCycleIsWitnessed) {
  // A 7-cycle with a hub: seven triangles around vertex 7.
  std::vector<Edge> es;
  std::vector<std::vector<Vertex>> faces;
  std::vector<Vertex> rim;
  for (int i = 0; i < 7; ++i) {
    es.emplace_back(i, (i + 1) % 7);
    es.emplace_back(i, 7);
    faces.push_back({i, (i + 1) % 7, 7});
    rim.push_back(6 - i);
  }
  faces.push_back(rim);
  auto pg = PlaneGraph::from_faces(Graph(8, std::span<const Edge>(es)), faces, rim);
  auto rep = audit(pg);
  const auto& c = find_check(rep.class_checks, "no_7_cycle");
  EXPECT_FALSE(c.ok);
  EXPECT_FALSE(c.witness.empty());
  EXPECT_EQ(rep.verdict, "HYPOTHESIS_VIOLATION");
}

TEST(AuditTest, HistoryExplainsAnAccount) {
  auto pg = fixture::ringed_shape(10, "vvuuww", 2);
  auto rep = audit(pg);
  auto h = rep.ledger.history(cluster_id(0));
  Quarters net = rep.ledger.initial(cluster_id(0));
  for (const auto& t : h) {
    EXPECT_TRUE(t.from == cluster_id(0) || t.to == cluster_id(0));
    net += t.to == cluster_id(0) ? t.amount : -t.amount;
  }
  EXPECT_EQ(net, rep.ledger.balance(cluster_id(0)));
}

TEST(AuditTest, NoGeneratedGraphMeetsEveryHypothesis) {
  // Conservation: the accounts sum to zero, so a graph meeting every hypothesis with
  // all accounts nonnegative and OUTER positive cannot exist.
  std::mt19937_64 rng(61);
  GenerateOptions opt;
  for (int i = 0; i < 120; ++i) {
    opt.vertices = 6 + i % 9;
    auto rep = audit(random_plane_graph(opt, rng));
    EXPECT_FALSE(rep.hypotheses_hold() && rep.negative.empty());
    EXPECT_EQ(rep.final_sum, 0);
  }
}
