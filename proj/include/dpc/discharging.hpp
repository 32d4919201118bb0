#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dpc/clusters.hpp"
#include "dpc/patterns.hpp"
#include "dpc/plane_graph.hpp"

namespace dpc {

/// Charges are kept in quarter units.
using Quarters = long long;

inline std::string format_quarters(Quarters q) {
  std::string sign = q < 0 ? "-" : "";
  Quarters a = q < 0 ? -q : q;
  Quarters num = a, den = 4;
  while (den > 1 && num % 2 == 0) {
    num /= 2;
    den /= 2;
  }
  return sign + std::to_string(num) + (den == 1 ? "" : "/" + std::to_string(den));
}

struct Transfer {
  std::string rule;
  std::string from;
  std::string to;
  Quarters amount = 0;
  std::string note;
};

/// Accounts in creation order plus an itemized transfer log.
class ChargeLedger {
 public:
  void open(const std::string& id, Quarters initial) {
    if (!balance_.emplace(id, initial).second) throw ContractViolation("account opened twice: " + id);
    order_.push_back(id);
    initial_[id] = initial;
  }

  void transfer(std::string rule, const std::string& from, const std::string& to, Quarters amount,
                std::string note = {}) {
    if (!balance_.count(from) || !balance_.count(to)) throw ContractViolation("transfer between unknown accounts");
    balance_[from] -= amount;
    balance_[to] += amount;
    transfers_.push_back({std::move(rule), from, to, amount, std::move(note)});
  }

  bool has(const std::string& id) const { return balance_.count(id) > 0; }
  Quarters balance(const std::string& id) const { return balance_.at(id); }
  Quarters initial(const std::string& id) const { return initial_.at(id); }
  const std::vector<std::string>& accounts() const noexcept { return order_; }
  const std::vector<Transfer>& transfers() const noexcept { return transfers_; }

  Quarters total() const {
    Quarters s = 0;
    for (const auto& [id, q] : balance_) s += q;
    return s;
  }

  std::vector<Transfer> history(const std::string& id) const {
    std::vector<Transfer> out;
    for (const auto& t : transfers_)
      if (t.from == id || t.to == id) out.push_back(t);
    return out;
  }

  friend bool operator==(const ChargeLedger& a, const ChargeLedger& b) { return a.balance_ == b.balance_; }

 private:
  std::vector<std::string> order_;
  std::map<std::string, Quarters> balance_;
  std::map<std::string, Quarters> initial_;
  std::vector<Transfer> transfers_;
};

inline std::string vertex_id(Vertex v) { return "v" + std::to_string(v); }
inline std::string face_id(int f) { return "f" + std::to_string(f); }
inline std::string cluster_id(int h) { return "H" + std::to_string(h); }
inline const std::string kOuter = "OUTER";

/// d(x) - 4 on vertices and inner faces, d(C) + 4 on the outer face.
inline ChargeLedger initial_charges(const PlaneGraph& pg) {
  ChargeLedger l;
  for (Vertex v = 0; v < pg.order(); ++v) l.open(vertex_id(v), 4 * (pg.graph().degree(v) - 4));
  for (const auto& f : pg.faces())
    if (f.id != pg.outer_face()) l.open(face_id(f.id), 4 * (f.degree() - 4));
  l.open(kOuter, pg.face_count() ? 4 * (pg.outer().degree() + 4) : 0);
  return l;
}

struct ClusterRecord {
  Cluster cluster;
  ClusterClass cls;
  bool special = false;
  bool internal = false;
};

struct Membership {
  int cluster = 0;
  int i_type = 0;  // edges of the cluster at the vertex
  bool good = false;
};

struct VertexTyping {
  std::vector<ClusterRecord> clusters;
  std::vector<int> face_cluster;  // face id -> cluster index, -1 outside clusters
  std::vector<char> internal;
  std::vector<std::vector<Membership>> memberships;
  std::vector<char> special6;

  const Membership* membership(Vertex v, int h) const {
    for (const auto& m : memberships[static_cast<std::size_t>(v)])
      if (m.cluster == h) return &m;
    return nullptr;
  }
};

namespace detail {

inline std::vector<char> internal_flags(const PlaneGraph& pg) {
  std::vector<char> in(static_cast<std::size_t>(pg.order()), 1);
  if (pg.face_count())
    for (Vertex v : pg.outer().walk) in[v] = 0;
  return in;
}

inline bool special_labeling(const PlaneGraph& pg, const std::vector<char>& internal, const RoleMap& r) {
  for (char role : {'x', 'y', 'z'}) {
    Vertex v = r.at(role);
    if (!internal[v] || pg.graph().degree(v) != 4) return false;
  }
  return true;
}

inline bool is_special_record(const PlaneGraph& pg, const std::vector<char>& internal, const ClusterClass& cls) {
  if (cls.code != 7 && cls.code != 9 && cls.code != 10 && cls.code != 11) return false;
  return std::any_of(cls.labelings.begin(), cls.labelings.end(),
                     [&](const RoleMap& r) { return special_labeling(pg, internal, r); });
}

}  // namespace detail

/// Shape (7), (9), (10) or (11) with some catalog labeling whose x, y, z are
/// internal 4-vertices.
inline bool classify_special_cluster(const PlaneGraph& pg, const Cluster& c) {
  auto cls = classify_cluster(pg, c);
  if (!cls.classified())
    throw AuditError("cluster outside the catalog", cluster_id(c.id) + ": " + cls.note);
  return detail::is_special_record(pg, detail::internal_flags(pg), cls);
}

inline VertexTyping vertex_typing(const PlaneGraph& pg) {
  VertexTyping t;
  const Graph& g = pg.graph();
  t.internal = detail::internal_flags(pg);
  t.face_cluster.assign(static_cast<std::size_t>(pg.face_count()), -1);
  for (auto& c : extract_clusters(pg)) {
    ClusterRecord r;
    r.cls = classify_cluster(pg, c);
    r.special = detail::is_special_record(pg, t.internal, r.cls);
    r.internal = std::all_of(c.vertices.begin(), c.vertices.end(), [&](Vertex v) { return t.internal[v]; });
    for (int f : c.faces) t.face_cluster[static_cast<std::size_t>(f)] = c.id;
    r.cluster = std::move(c);
    t.clusters.push_back(std::move(r));
  }
  t.memberships.resize(static_cast<std::size_t>(pg.order()));
  for (const auto& r : t.clusters) {
    std::map<Vertex, int> count;
    for (int e : r.cluster.edges) {
      ++count[g.edge(e).u];
      ++count[g.edge(e).v];
    }
    for (auto [v, i] : count) t.memberships[v].push_back({r.cluster.id, i, r.special});
  }
  t.special6.assign(static_cast<std::size_t>(pg.order()), 0);
  for (Vertex v = 0; v < pg.order(); ++v) {
    if (!t.internal[v] || g.degree(v) != 6) continue;
    bool big = false, small = false;
    for (const auto& m : t.memberships[v]) {
      const auto& r = t.clusters[static_cast<std::size_t>(m.cluster)];
      int k = r.cluster.k();
      big |= m.good && m.i_type == 4 && r.internal && k >= 6 && k <= 7;
      small |= m.good && m.i_type == 2 && k >= 4 && k <= 5;
    }
    t.special6[v] = big && small;
  }
  return t;
}

inline const std::vector<std::string>& default_rule_order() {
  static const std::vector<std::string> order = {"R5", "R1a", "R1b", "R2", "R3", "R4"};
  return order;
}

/// Folds every clustered 3-face into its cluster account (tag AGG).
inline void aggregate_clusters(const PlaneGraph& pg, const VertexTyping& t, ChargeLedger& l) {
  for (const auto& r : t.clusters) {
    l.open(cluster_id(r.cluster.id), 0);
    for (int f : r.cluster.faces) l.transfer("AGG", face_id(f), cluster_id(r.cluster.id), l.balance(face_id(f)));
  }
  (void)pg;
}

namespace detail {

// Quarter credits each vertex receives under R1 from 5+-faces.
inline std::vector<Quarters> r1_vertex_credit(const PlaneGraph& pg, const VertexTyping& t,
                                              std::vector<Transfer>* out = nullptr) {
  const Graph& g = pg.graph();
  std::vector<Quarters> credit(static_cast<std::size_t>(pg.order()), 0);
  auto is_tri = [&](int f) { return f != pg.outer_face() && pg.face(f).degree() == 3; };
  for (const auto& f : pg.faces()) {
    if (f.id == pg.outer_face() || f.degree() < 5) continue;
    std::set<int> seen;
    for (std::size_t i = 0; i < f.walk.size(); ++i) {
      Vertex a = f.walk[i], b = f.walk[(i + 1) % f.walk.size()];
      int e = g.edge_index(a, b);
      if (!seen.insert(e).second) continue;
      int other = pg.face_of_dart(b, a);
      if (is_tri(other)) {
        if (out) out->push_back({"R1a", face_id(f.id), cluster_id(t.face_cluster[other]), 2, "shared edge " +
                                 std::to_string(a) + "-" + std::to_string(b)});
        continue;
      }
      if (other == pg.outer_face() && pg.outer().degree() == 3) continue;
      for (Vertex x : {a, b}) {
        if (!t.internal[x]) continue;
        credit[x] += 1;
        if (out) out->push_back({"R1a", face_id(f.id), vertex_id(x), 1,
                                 "edge " + std::to_string(a) + "-" + std::to_string(b) + " on no 3-face"});
      }
    }
  }
  return credit;
}

inline bool on_adjacent_four_face(const PlaneGraph& pg, const VertexTyping& t, Vertex v, int h) {
  for (int f : pg.faces_around(v)) {
    if (f == pg.outer_face() || pg.face(f).degree() != 4) continue;
    const auto& w = pg.face(f).walk;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int other = pg.face_of_dart(w[(i + 1) % w.size()], w[i]);
      if (other != pg.outer_face() && t.face_cluster[static_cast<std::size_t>(other)] == h) return true;
    }
  }
  return false;
}

inline int three_type_fives(const PlaneGraph& pg, const VertexTyping& t, int h) {
  int n = 0;
  for (Vertex v : t.clusters[static_cast<std::size_t>(h)].cluster.vertices) {
    const auto* m = t.membership(v, h);
    n += t.internal[v] && pg.graph().degree(v) == 5 && m && m->i_type == 3;
  }
  return n;
}

}  // namespace detail

/// Applies the rules in the given order and returns notes on branches worth a
/// reader's attention. Throws AuditError when a structural fact the rules rely on
/// does not hold.
inline std::vector<std::string> apply_rules(const PlaneGraph& pg, const VertexTyping& t, ChargeLedger& l,
                                            const std::vector<std::string>& order = default_rule_order()) {
  const Graph& g = pg.graph();
  std::vector<std::string> notes;
  auto deg = [&](Vertex v) { return g.degree(v); };

  auto r5 = [&]() {
    if (!pg.face_count()) return;
    for (Vertex v : pg.outer_vertices()) l.transfer("R5", vertex_id(v), kOuter, 4 * (deg(v) - 4));
    for (const auto& f : pg.faces()) {
      if (f.id == pg.outer_face() || f.degree() != 3) continue;
      bool touches = std::any_of(f.walk.begin(), f.walk.end(), [&](Vertex v) { return !t.internal[v]; });
      if (touches) l.transfer("R5", kOuter, cluster_id(t.face_cluster[f.id]), 4, "non-internal 3-face " + face_id(f.id));
    }
  };

  auto r1a = [&]() {
    std::vector<Transfer> out;
    detail::r1_vertex_credit(pg, t, &out);
    for (auto& x : out) l.transfer(x.rule, x.from, x.to, x.amount, x.note);
  };

  auto r1b = [&]() {
    auto credit = detail::r1_vertex_credit(pg, t);
    for (Vertex v = 0; v < pg.order(); ++v) {
      if (!t.internal[v] || deg(v) != 4 || credit[v] == 0) continue;
      for (const auto& m : t.memberships[v])
        if (m.i_type >= 3) {
          l.transfer("R1b", vertex_id(v), cluster_id(m.cluster), credit[v], "pass-through of R1 credits");
          break;
        }
    }
  };

  auto cluster_rule = [&](const std::string& tag, int k_lo, int k_hi, auto amount) {
    for (const auto& r : t.clusters) {
      const int h = r.cluster.id, k = r.cluster.k();
      if (k < k_lo || k > k_hi) continue;
      for (Vertex v : r.cluster.vertices) {
        if (!t.internal[v] || deg(v) < 5) continue;
        const auto* m = t.membership(v, h);
        Quarters q = amount(v, *m, h);
        if (q > 0) l.transfer(tag, vertex_id(v), cluster_id(h), q);
      }
    }
  };

  auto r2 = [&]() {
    for (const auto& r : t.clusters) {
      if (r.cluster.k() < 3) continue;
      for (int e : r.cluster.edges) {
        auto [f1, f2] = pg.edge_faces(e);
        for (int f : {f1, f2})
          if (f != pg.outer_face() && pg.face(f).degree() == 4)
            throw AuditError("a cluster with at least three 3-faces is adjacent to a 4-face",
                             cluster_id(r.cluster.id) + " / " + face_id(f));
      }
    }
    cluster_rule("R2", 1, 5, [&](Vertex v, const Membership& m, int h) -> Quarters {
      if (m.i_type == 2) {
        if (m.good) return 2;
        if (detail::on_adjacent_four_face(pg, t, v, h)) {
          notes.push_back("R2 four-face branch: " + vertex_id(v) + " -> " + cluster_id(h));
          return 2;
        }
        return 0;
      }
      if (m.i_type == 3) return deg(v) == 5 && m.good ? 4 : 2;
      if (m.i_type == 4) return 6;
      return 0;
    });
  };

  auto r3 = [&]() {
    cluster_rule("R3", 6, 6, [&](Vertex v, const Membership& m, int h) -> Quarters {
      if (m.i_type == 3 && deg(v) == 5) return m.good ? 4 : 2;
      if (m.i_type == 4 && deg(v) >= 6 && m.good && detail::three_type_fives(pg, t, h) >= 2) return 8;
      if (m.i_type == 4 || (m.i_type == 3 && deg(v) >= 6)) return 6;
      return 0;
    });
  };

  auto r4 = [&]() {
    cluster_rule("R4", 7, 7, [&](Vertex v, const Membership&, int) -> Quarters {
      if (deg(v) == 5 || (deg(v) == 6 && t.special6[v])) return 6;
      if (deg(v) == 6) return 8;
      return 10;
    });
  };

  for (const auto& rule : order) {
    if (rule == "R5") r5();
    else if (rule == "R1a") r1a();
    else if (rule == "R1b") r1b();
    else if (rule == "R2") r2();
    else if (rule == "R3") r3();
    else if (rule == "R4") r4();
    else throw ContractViolation("unknown rule " + rule);
  }
  return notes;
}

/// Per (vertex, cluster) totals from R2-R4 that exceed the stated caps.
inline std::vector<std::string> cap_violations(const PlaneGraph& pg, const VertexTyping& t, const ChargeLedger& l) {
  std::map<std::pair<std::string, std::string>, Quarters> given;
  for (const auto& x : l.transfers())
    if (x.rule == "R2" || x.rule == "R3" || x.rule == "R4") given[{x.from, x.to}] += x.amount;
  std::vector<std::string> out;
  for (Vertex v = 0; v < pg.order(); ++v) {
    const int d = pg.graph().degree(v);
    if (!t.internal[v] || d < 5) continue;
    for (const auto& m : t.memberships[v]) {
      Quarters cap = -1;
      if (m.i_type == 2) cap = 2;
      else if (m.i_type == 3) cap = d == 5 ? 4 : 6;
      else if (m.i_type == 4) cap = d == 5 ? 6 : d == 6 ? 8 : 10;
      if (cap < 0) continue;
      auto it = given.find({vertex_id(v), cluster_id(m.cluster)});
      Quarters q = it == given.end() ? 0 : it->second;
      if (q > cap)
        out.push_back(vertex_id(v) + " gives " + format_quarters(q) + " to " + cluster_id(m.cluster) + " (cap " +
                      format_quarters(cap) + ")");
    }
  }
  return out;
}

struct Check {
  std::string name;
  bool ok = true;
  std::string witness;
};

struct OuterIdentity {
  bool applicable = false;
  long long e = 0;
  long long f3 = 0;
  Quarters expected = 0;  // 4 * (1 + e - f3)
  Quarters ledger_value = 0;
  bool holds() const noexcept { return applicable && expected == ledger_value; }
};

struct AuditReport {
  std::vector<Check> class_checks;
  std::vector<Check> lemma_preconditions;
  ChargeLedger ledger;
  Quarters initial_sum = 0;
  Quarters final_sum = 0;
  bool clusters_start_at_minus_k = true;
  std::vector<std::string> cap_violations;
  std::vector<std::string> notes;
  std::vector<std::string> negative;  // accounts below zero, OUTER at or below zero
  OuterIdentity outer_identity;
  std::string rule_error;
  std::string verdict;

  bool hypotheses_hold() const {
    auto ok = [](const std::vector<Check>& cs) {
      return std::all_of(cs.begin(), cs.end(), [](const Check& c) { return c.ok; });
    };
    return ok(class_checks) && ok(lemma_preconditions) && rule_error.empty();
  }
};

namespace detail {

inline std::string join_path(const std::vector<Vertex>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "-" : "") + std::to_string(p[i]);
  return s;
}

inline std::vector<Check> class_checks(const PlaneGraph& pg, const VertexTyping& t) {
  const Graph& g = pg.graph();
  std::vector<Check> out;
  out.push_back({"connected", g.connected(), ""});
  {
    auto c = find_cycle_of_length(g, 7);
    out.push_back({"no_7_cycle", !c, c ? "cycle " + join_path(*c) : ""});
  }
  {
    auto m = find_pattern(g, butterfly_graph());
    out.push_back({"no_butterfly", !m, m ? "butterfly on " + join_path(*m) : ""});
  }
  {
    Check c{"clusters_classified", true, ""};
    for (const auto& r : t.clusters)
      if (!r.cls.classified()) {
        c.ok = false;
        c.witness = cluster_id(r.cluster.id) + ": " + r.cls.note;
        break;
      }
    out.push_back(c);
  }
  {
    Check c{"outer_good_triangle", true, ""};
    if (!pg.face_count() || pg.outer().degree() != 3) {
      c.ok = false;
      c.witness = "outer face has degree " + std::to_string(pg.face_count() ? pg.outer().degree() : 0);
    } else {
      const auto& w = pg.outer().walk;
      if (cycle_predicates(pg, {w[0], w[1], w[2]}).bad) {
        c.ok = false;
        c.witness = "outer triangle " + join_path(w) + " bounds a 7-cluster";
      }
    }
    out.push_back(c);
  }
  return out;
}

inline std::vector<Check> lemma_checks(const PlaneGraph& pg, const VertexTyping& t) {
  const Graph& g = pg.graph();
  auto deg = [&](Vertex v) { return g.degree(v); };
  std::vector<Check> out;

  {
    Check c{"internal_min_degree_4", true, ""};
    for (Vertex v = 0; v < pg.order(); ++v)
      if (t.internal[v] && deg(v) < 4) {
        c = {c.name, false, "vertex " + std::to_string(v) + " has degree " + std::to_string(deg(v))};
        break;
      }
    out.push_back(c);
  }
  {
    Check c{"no_separating_good_triangle", true, ""};
    for (const auto& tri : triangles(g)) {
      auto p = cycle_predicates(pg, tri);
      if (p.separating && p.good()) {
        c = {c.name, false, "triangle " + join_path({tri[0], tri[1], tri[2]})};
        break;
      }
    }
    out.push_back(c);
  }
  {
    Check c{"no_diamond_of_444_faces", true, ""};
    auto internal444 = [&](int f) {
      if (f == pg.outer_face() || pg.face(f).degree() != 3) return false;
      for (Vertex v : pg.face(f).walk)
        if (!t.internal[v] || deg(v) != 4) return false;
      return true;
    };
    for (int e = 0; e < g.size() && c.ok; ++e) {
      auto [f1, f2] = pg.edge_faces(e);
      if (f1 == f2 || !internal444(f1) || !internal444(f2)) continue;
      const Edge& ed = g.edge(e);
      auto third = [&](int f) {
        for (Vertex v : pg.face(f).walk)
          if (v != ed.u && v != ed.v) return v;
        return -1;
      };
      Vertex x = third(f1), y = third(f2);
      if (x != y && !g.adjacent(x, y))
        c = {c.name, false, "faces " + face_id(f1) + ", " + face_id(f2) + " share only edge " +
                                std::to_string(ed.u) + "-" + std::to_string(ed.v)};
    }
    out.push_back(c);
  }
  {
    Check c{"five_vertex_on_one_special_cluster", true, ""};
    for (Vertex v = 0; v < pg.order() && c.ok; ++v) {
      if (!t.internal[v] || deg(v) != 5) continue;
      int specials = 0;
      for (const auto& m : t.memberships[v]) specials += m.good;
      if (specials >= 2) c = {c.name, false, "vertex " + std::to_string(v) + " lies on " + std::to_string(specials) + " special clusters"};
    }
    out.push_back(c);
  }
  {
    Check c{"six_cluster_555", true, ""};
    for (const auto& r : t.clusters) {
      if (r.cls.code != 10 || !r.internal || !c.ok) continue;
      for (const auto& lab : r.cls.labelings) {
        if (!special_labeling(pg, t.internal, lab)) continue;
        Vertex u = lab.at('u'), v = lab.at('v'), w = lab.at('w');
        if (deg(u) == 5 && deg(w) == 5 && (deg(v) <= 5 || t.special6[v])) {
          c = {c.name, false, cluster_id(r.cluster.id) + " with u=" + std::to_string(u) + " v=" + std::to_string(v) +
                                  " w=" + std::to_string(w)};
          break;
        }
      }
    }
    out.push_back(c);
  }
  {
    Check c{"seven_cluster_556", true, ""};
    for (const auto& r : t.clusters) {
      if (r.cls.code != 11 || !r.internal || !c.ok) continue;
      const auto& lab = r.cls.roles();
      int top = std::max({deg(lab.at('u')), deg(lab.at('v')), deg(lab.at('w'))});
      if (top > 6) continue;
      std::vector<Vertex> light;
      for (Vertex v : r.cluster.vertices)
        if (deg(v) == 5 || t.special6[v]) light.push_back(v);
      if (light.size() >= 2)
        c = {c.name, false, cluster_id(r.cluster.id) + " has 5- or special 6-vertices " + join_path(light)};
    }
    out.push_back(c);
  }
  return out;
}

inline OuterIdentity outer_identity(const PlaneGraph& pg, const VertexTyping& t, const ChargeLedger& l) {
  OuterIdentity id;
  if (!pg.face_count() || pg.outer().degree() != 3) return id;
  id.applicable = true;
  for (const auto& e : pg.graph().edges()) id.e += t.internal[e.u] != t.internal[e.v];
  for (const auto& f : pg.faces()) {
    if (f.id == pg.outer_face() || f.degree() != 3) continue;
    id.f3 += std::any_of(f.walk.begin(), f.walk.end(), [&](Vertex v) { return !t.internal[v]; });
  }
  id.expected = 4 * (1 + id.e - id.f3);
  id.ledger_value = l.balance(kOuter);
  return id;
}

}  // namespace detail

/// Full audit: hypotheses, ledger, invariants and verdict. Never throws on
/// mathematical failures; they are reported.
inline AuditReport audit(const PlaneGraph& pg, const std::vector<std::string>& order = default_rule_order()) {
  AuditReport rep;
  VertexTyping t = vertex_typing(pg);
  rep.class_checks = detail::class_checks(pg, t);
  rep.lemma_preconditions = detail::lemma_checks(pg, t);

  rep.ledger = initial_charges(pg);
  rep.initial_sum = rep.ledger.total();
  aggregate_clusters(pg, t, rep.ledger);
  for (const auto& r : t.clusters)
    rep.clusters_start_at_minus_k &= rep.ledger.balance(cluster_id(r.cluster.id)) == -4 * r.cluster.k();
  try {
    rep.notes = apply_rules(pg, t, rep.ledger, order);
  } catch (const AuditError& e) {
    rep.rule_error = std::string(e.what()) + " (" + e.witness() + ")";
  }
  rep.final_sum = rep.ledger.total();
  rep.cap_violations = cap_violations(pg, t, rep.ledger);
  rep.outer_identity = detail::outer_identity(pg, t, rep.ledger);

  for (const auto& id : rep.ledger.accounts()) {
    Quarters q = rep.ledger.balance(id);
    if (id == kOuter ? q <= 0 : q < 0) rep.negative.push_back(id + " = " + format_quarters(q));
  }
  if (!rep.hypotheses_hold()) rep.verdict = "HYPOTHESIS_VIOLATION";
  else if (!rep.negative.empty()) rep.verdict = "NEGATIVE_CHARGE";
  else rep.verdict = "ALL_NONNEGATIVE";
  return rep;
}

}  // namespace dpc
