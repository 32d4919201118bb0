#pragma once

#include <atomic>
#include <chrono>
#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "dpc/clusters.hpp"
#include "dpc/cover.hpp"
#include "dpc/graph.hpp"

namespace dpc {

enum class ConfigKind {
  kTransversal,     // every floor-exact instance must have a transversal
  kPrecolorMargin,  // at most `max_bad` colors of `pivot` may block the rest
};

/// A local instance family: the deleted vertex set with its induced edges and the
/// residual-list lower bounds a proof establishes for it.
struct Configuration {
  std::string label;
  Graph local;
  std::vector<std::string> names;
  std::vector<int> floors;
  std::vector<Edge> tree;
  std::vector<Vertex> proof_order;
  ConfigKind kind = ConfigKind::kTransversal;
  Vertex pivot = -1;
  int max_bad = 1;
  int k = 4;

  Vertex vertex(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<Vertex>(i);
    throw ContractViolation(label + ": no vertex named " + name);
  }

  void validate() const {
    if (k < 1 || k > kMaxColors) throw ContractViolation(label + ": k out of range");
    if (static_cast<int>(floors.size()) != local.order() || static_cast<int>(names.size()) != local.order())
      throw ContractViolation(label + ": floors/names must cover every vertex");
    for (int f : floors)
      if (f < 0 || f > k) throw ContractViolation(label + ": residual floor outside 0..k");
    std::vector<int> parent(static_cast<std::size_t>(local.order()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& e : tree) {
      if (!local.adjacent(e.u, e.v)) throw ContractViolation(label + ": tree edge not in the local graph");
      int a = find(e.u), b = find(e.v);
      if (a == b) throw ContractViolation(label + ": tree contains a cycle");
      parent[a] = b;
    }
    if (kind == ConfigKind::kPrecolorMargin && !local.valid(pivot))
      throw ContractViolation(label + ": margin configuration needs a pivot vertex");
  }
};

/// Builds a configuration from vertex names; edges and tree are "a-b" strings.
inline Configuration make_configuration(std::string label, std::vector<std::string> names,
                                        const std::vector<std::string>& edges, const std::map<std::string, int>& floors,
                                        const std::vector<std::string>& tree) {
  Configuration c;
  c.label = std::move(label);
  c.names = std::move(names);
  auto idx = [&](const std::string& s) {
    for (std::size_t i = 0; i < c.names.size(); ++i)
      if (c.names[i] == s) return static_cast<Vertex>(i);
    throw ContractViolation(c.label + ": unknown vertex " + s);
  };
  auto parse = [&](const std::string& e) {
    auto dash = e.find('-');
    return Edge(idx(e.substr(0, dash)), idx(e.substr(dash + 1)));
  };
  std::vector<Edge> es;
  for (const auto& e : edges) es.push_back(parse(e));
  c.local = Graph(static_cast<int>(c.names.size()), std::span<const Edge>(es));
  c.floors.assign(c.names.size(), 0);
  for (const auto& [n, f] : floors) c.floors[static_cast<std::size_t>(idx(n))] = f;
  for (const auto& e : tree) c.tree.push_back(parse(e));
  return c;
}

namespace detail {

inline std::vector<std::string> shape_edges(int code) {
  const auto& s = catalog_shape(code);
  std::vector<std::string> out;
  for (const auto& e : s.edges()) out.push_back(std::string(1, s.labels[e.u]) + "-" + s.labels[e.v]);
  return out;
}

inline std::vector<std::string> shape_names(int code) {
  std::vector<std::string> out;
  for (char c : catalog_shape(code).labels) out.emplace_back(1, c);
  return out;
}

}  // namespace detail

/// Built-in configurations, keyed by label.
inline std::map<std::string, Configuration> config_catalog() {
  std::map<std::string, Configuration> out;
  auto add = [&](Configuration c) {
    c.validate();
    out.emplace(c.label, std::move(c));
  };

  add(make_configuration("L2", {"v"}, {}, {{"v", 1}}, {}));

  {
    auto c = make_configuration("L4-diamond", {"u", "v", "x", "y"}, {"u-v", "u-x", "v-x", "u-y", "v-y"},
                                {{"u", 3}, {"v", 3}, {"x", 2}, {"y", 2}}, {"v-u", "v-x", "v-y"});
    c.proof_order = {c.vertex("y"), c.vertex("u"), c.vertex("x")};
    add(std::move(c));
  }

  {
    auto c = make_configuration(
        "L5-special5", {"v", "v1", "v2", "v3", "v4", "v12", "v34"},
        {"v-v1", "v-v2", "v-v3", "v-v4", "v1-v2", "v1-v12", "v2-v12", "v3-v4", "v3-v34", "v4-v34"},
        {{"v", 3}, {"v1", 3}, {"v2", 3}, {"v3", 3}, {"v4", 3}, {"v12", 2}, {"v34", 2}},
        {"v-v1", "v-v2", "v-v3", "v-v4", "v1-v12", "v3-v34"});
    c.proof_order = {c.vertex("v"), c.vertex("v4"), c.vertex("v34"), c.vertex("v2"), c.vertex("v12")};
    add(std::move(c));
  }

  {
    auto c = make_configuration("L6-precolor", {"v", "x'", "y'", "z'"}, {"v-y'", "v-z'", "x'-y'", "y'-z'", "x'-z'"},
                                {{"v", 4}, {"x'", 2}, {"y'", 3}, {"z'", 3}}, {"v-y'", "y'-x'", "y'-z'"});
    c.kind = ConfigKind::kPrecolorMargin;
    c.pivot = c.vertex("v");
    c.max_bad = 1;
    add(std::move(c));
  }

  add(make_configuration("L7-555", detail::shape_names(10), detail::shape_edges(10),
                         {{"u", 2}, {"x", 4}, {"y", 4}, {"w", 2}, {"z", 4}, {"v", 3}}, {"u-v", "v-w", "v-y", "y-x"}));
  add(make_configuration("L8-556", detail::shape_names(11), detail::shape_edges(11),
                         {{"v", 2}, {"x", 4}, {"y", 4}, {"z", 4}, {"u", 3}, {"w", 3}}, {"u-v", "v-w", "v-y", "y-x"}));
  add(make_configuration("CE-6", detail::shape_names(10), detail::shape_edges(10),
                         {{"u", 2}, {"v", 2}, {"w", 2}, {"x", 4}, {"y", 4}, {"z", 4}}, {"u-v", "v-w", "v-y", "y-x"}));
  add(make_configuration("CE-7", detail::shape_names(11), detail::shape_edges(11),
                         {{"u", 3}, {"v", 2}, {"w", 2}, {"x", 4}, {"y", 4}, {"z", 4}}, {"u-v", "v-w", "v-y", "y-x"}));
  return out;
}

/// Resolves "L4" to "L4-diamond" and so on; exact labels pass through.
inline const Configuration& find_configuration(const std::map<std::string, Configuration>& catalog,
                                               const std::string& name) {
  if (auto it = catalog.find(name); it != catalog.end()) return it->second;
  for (const auto& [label, cfg] : catalog)
    if (label.rfind(name + "-", 0) == 0) return cfg;
  throw ContractViolation("unknown configuration " + name);
}

enum class Mode { kFull, kSampled };
enum class Status { kReducible, kNotReducible, kInconclusive };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::kReducible: return "REDUCIBLE";
    case Status::kNotReducible: return "NOT_REDUCIBLE";
    case Status::kInconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

struct CheckOptions {
  Mode mode = Mode::kFull;
  std::uint64_t seed = 0;
  long long samples = 10000;
  int workers = 1;
  long long node_budget = 0;  // 0: unlimited
  /// Straighten a spanning forest containing the designated tree.
  bool straighten = true;
  /// Keep one residual tuple per orbit of the global color renaming.
  bool canonical_residuals = true;
  /// Enumerate matchings restricted to the endpoints' residual sets instead of
  /// every bijection.
  bool restrict_injections = true;
  /// Memoize subtrees by the surviving coloring set.
  bool memo = true;
  std::size_t memo_bytes = std::size_t{256} << 20;
  /// Also enumerate every residual superset of the floors (naive cross-check).
  bool supersets = false;
};

struct Verdict {
  Status status = Status::kInconclusive;
  std::optional<CoverInstance> witness;
  long long enumerated = 0;  // search nodes visited
  long long pruned = 0;      // subtrees skipped by memo hits
  long long tuples = 0;      // residual-set tuples examined
  double seconds = 0;
  int max_bad = -1;          // margin configurations: worst blocked-color count seen
  std::string note;
};

namespace detail {

using Word = std::uint64_t;

/// Surviving-coloring sets already proven safe at a given depth.
class MaskMemo {
 public:
  MaskMemo(int words, std::size_t byte_cap) : words_(words), cap_entries_(byte_cap / (sizeof(Word) * std::max(1, words) + 8)) {}

  bool contains(const Word* m) const {
    if (slots_.empty()) return false;
    std::size_t h = hash(m) & (slots_.size() - 1);
    while (slots_[h] != kEmpty) {
      if (std::memcmp(&data_[slots_[h] * words_], m, sizeof(Word) * words_) == 0) return true;
      h = (h + 1) & (slots_.size() - 1);
    }
    return false;
  }

  void insert(const Word* m) {
    if (count_ >= cap_entries_) return;
    if ((count_ + 1) * 2 > slots_.size()) grow();
    std::size_t h = hash(m) & (slots_.size() - 1);
    while (slots_[h] != kEmpty) {
      if (std::memcmp(&data_[slots_[h] * words_], m, sizeof(Word) * words_) == 0) return;
      h = (h + 1) & (slots_.size() - 1);
    }
    slots_[h] = count_++;
    data_.insert(data_.end(), m, m + words_);
  }

  void clear() {
    slots_.clear();
    data_.clear();
    count_ = 0;
  }

 private:
  static constexpr std::size_t kEmpty = ~std::size_t{0};

  std::size_t hash(const Word* m) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < words_; ++i) {
      h ^= m[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }

  void grow() {
    std::size_t n = slots_.empty() ? 1024 : slots_.size() * 2;
    slots_.assign(n, kEmpty);
    for (std::size_t i = 0; i < count_; ++i) {
      std::size_t h = hash(&data_[i * words_]) & (n - 1);
      while (slots_[h] != kEmpty) h = (h + 1) & (n - 1);
      slots_[h] = i;
    }
  }

  int words_;
  std::size_t cap_entries_;
  std::vector<std::size_t> slots_;
  std::vector<Word> data_;
  std::size_t count_ = 0;
};

inline std::vector<Permutation> all_permutations(int k) {
  std::vector<Permutation> out;
  auto p = identity_permutation(k);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::vector<ColorMask> subsets_of_size(int k, int size) {
  std::vector<ColorMask> out;
  for (ColorMask m = 0; m <= full_mask(k); ++m)
    if (popcount(m) == size) out.push_back(m);
  return out;
}

/// Spanning forest: the designated tree plus edges greedily added in edge order.
inline std::vector<Edge> spanning_forest(const Graph& g, const std::vector<Edge>& tree) {
  std::vector<int> parent(static_cast<std::size_t>(g.order()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<Edge> out;
  auto take = [&](const Edge& e) {
    int a = find(e.u), b = find(e.v);
    if (a == b) return;
    parent[a] = b;
    out.push_back(e);
  };
  for (const auto& e : tree) take(e);
  for (const auto& e : g.edges()) take(e);
  return out;
}

/// Every floor-respecting residual tuple, optionally one per renaming orbit.
inline std::vector<std::vector<ColorMask>> residual_tuples(const Configuration& cfg, bool canonical, bool supersets) {
  const int n = cfg.local.order();
  std::vector<std::vector<ColorMask>> choices;
  for (int v = 0; v < n; ++v) {
    std::vector<ColorMask> c;
    for (int s = cfg.floors[v]; s <= (supersets ? cfg.k : cfg.floors[v]); ++s) {
      auto part = subsets_of_size(cfg.k, s);
      c.insert(c.end(), part.begin(), part.end());
    }
    choices.push_back(std::move(c));
  }
  std::vector<std::vector<ColorMask>> out;
  std::vector<ColorMask> cur(static_cast<std::size_t>(n));
  const auto perms = canonical ? all_permutations(cfg.k) : std::vector<Permutation>{};
  auto rec = [&](auto&& self, int v) -> void {
    if (v == n) {
      for (const auto& p : perms) {
        std::vector<ColorMask> img(cur.size());
        for (std::size_t i = 0; i < cur.size(); ++i) img[i] = permute_mask(p, cur[i]);
        if (img < cur) return;
      }
      out.push_back(cur);
      return;
    }
    for (ColorMask m : choices[v]) {
      cur[v] = m;
      self(self, v + 1);
    }
  };
  rec(rec, 0);
  return out;
}

/// The instance family for one residual tuple: colorings are indexed in mixed
/// radix over the vertices, and each free edge carries its distinct matching
/// options together with the set of colorings each option leaves intact.
class InstanceSpace {
 public:
  struct Choices {
    int edge = 0;
    Vertex a = 0, b = 0;
    std::vector<Permutation> rep;  // a full bijection realizing each option
    std::vector<Word> allowed;     // options x words
  };

  InstanceSpace(const Configuration& cfg, std::vector<ColorMask> tuple, const std::vector<Edge>& forest,
                bool restrict_injections, const std::map<int, Permutation>& fixed = {})
      : cfg_(cfg), tuple_(std::move(tuple)), fixed_(fixed) {
    const int n = cfg.local.order();
    radix_.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
      for (ColorMask m = tuple_[v]; m; m &= m - 1) radix_[v].push_back(std::countr_zero(m));
    total_ = 1;
    for (const auto& r : radix_) {
      total_ *= static_cast<long long>(r.size());
      if (total_ > (1LL << 24)) throw ContractViolation(cfg.label + ": too many colorings for the bitset engine");
    }
    words_ = static_cast<int>((total_ + 63) / 64);
    color_of_.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(total_)));
    for (long long i = 0; i < total_; ++i) {
      long long rest = i;
      for (int v = n - 1; v >= 0; --v) {
        auto s = static_cast<long long>(radix_[v].size());
        color_of_[v][static_cast<std::size_t>(i)] = s ? radix_[v][static_cast<std::size_t>(rest % s)] : -1;
        if (s) rest /= s;
      }
    }

    base_.assign(static_cast<std::size_t>(words_), 0);
    for (long long i = 0; i < total_; ++i) base_[static_cast<std::size_t>(i / 64)] |= Word{1} << (i % 64);
    std::set<Edge> in_forest(forest.begin(), forest.end());
    const auto perms = all_permutations(cfg.k);
    for (int e = 0; e < cfg.local.size(); ++e) {
      const Edge& ed = cfg.local.edge(e);
      auto fx = fixed.find(e);
      if (in_forest.count(ed) || fx != fixed.end()) {
        auto m = allowed_for(ed.u, ed.v, fx != fixed.end() ? fx->second : identity_permutation(cfg.k));
        for (int w = 0; w < words_; ++w) base_[w] &= m[w];
        continue;
      }
      Choices ch{e, ed.u, ed.v, {}, {}};
      std::set<std::vector<int>> seen;
      for (const auto& p : perms) {
        if (restrict_injections) {
          std::vector<int> key;
          for (int c : radix_[ed.u]) key.push_back(tuple_[ed.v] >> p[c] & 1 ? p[c] : -1);
          if (!seen.insert(key).second) continue;
        }
        ch.rep.push_back(p);
        auto m = allowed_for(ed.u, ed.v, p);
        ch.allowed.insert(ch.allowed.end(), m.begin(), m.end());
      }
      free_.push_back(std::move(ch));
    }
    order_free_edges();
    // Vertices whose colors still matter below each depth: endpoints of later free
    // edges plus the pivot of a margin check.
    for (std::size_t d = 0; d <= free_.size(); ++d) {
      std::vector<char> in(static_cast<std::size_t>(n), 0);
      for (std::size_t j = d; j < free_.size(); ++j) in[free_[j].a] = in[free_[j].b] = 1;
      if (cfg.kind == ConfigKind::kPrecolorMargin) in[cfg.pivot] = 1;
      Projection pr;
      long long size = 1;
      std::vector<long long> stride(static_cast<std::size_t>(n), 0);
      for (int v = n - 1; v >= 0; --v)
        if (in[v]) {
          stride[v] = size;
          size *= static_cast<long long>(radix_[v].size());
        }
      pr.words = static_cast<int>((size + 63) / 64);
      pr.index.resize(static_cast<std::size_t>(total_));
      for (long long i = 0; i < total_; ++i) {
        long long idx = 0;
        for (int v = 0; v < n; ++v)
          if (in[v]) idx += stride[v] * position(v, color_of(v, i));
        pr.index[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(idx);
      }
      proj_.push_back(std::move(pr));
    }
  }

  struct Projection {
    int words = 0;
    std::vector<std::uint32_t> index;  // coloring -> projected coloring
  };

  /// Projection used as the memo key for sets reached at `depth`.
  const Projection& projection(std::size_t depth) const { return proj_[depth]; }

  int words() const noexcept { return words_; }
  long long colorings() const noexcept { return total_; }
  const std::vector<Word>& base() const noexcept { return base_; }
  const std::vector<Choices>& free_edges() const noexcept { return free_; }
  const std::vector<ColorMask>& tuple() const noexcept { return tuple_; }
  int color_of(Vertex v, long long idx) const { return color_of_[v][static_cast<std::size_t>(idx)]; }

  /// Colorings whose color at v equals c.
  std::vector<Word> with_color(Vertex v, int c) const {
    std::vector<Word> m(static_cast<std::size_t>(words_), 0);
    for (long long i = 0; i < total_; ++i)
      if (color_of(v, i) == c) m[static_cast<std::size_t>(i / 64)] |= Word{1} << (i % 64);
    return m;
  }

  /// Concrete instance for chosen option indices (one per free edge, in free order).
  CoverInstance build(const std::vector<int>& option) const {
    std::vector<Permutation> sigma(static_cast<std::size_t>(cfg_.local.size()), identity_permutation(cfg_.k));
    for (const auto& [e, p] : fixed_) sigma[static_cast<std::size_t>(e)] = p;
    for (std::size_t i = 0; i < free_.size(); ++i)
      sigma[static_cast<std::size_t>(free_[i].edge)] = free_[i].rep[static_cast<std::size_t>(option[i])];
    ListAssignment lists{cfg_.k, tuple_};
    return CoverInstance(cfg_.local, std::move(lists), MatchingAssignment(cfg_.k, std::move(sigma)));
  }

 private:
  long long position(Vertex v, int c) const {
    const auto& r = radix_[v];
    return std::find(r.begin(), r.end(), c) - r.begin();
  }

  // Greedy order keeping few vertices shared between handled and pending edges,
  // so memo keys stay small; ties prefer edges with fewer options.
  void order_free_edges() {
    std::vector<Choices> pending = std::move(free_);
    free_.clear();
    const int n = cfg_.local.order();
    std::vector<char> touched(static_cast<std::size_t>(n), 0);
    while (!pending.empty()) {
      std::size_t best = 0;
      long long best_key = -1;
      for (std::size_t i = 0; i < pending.size(); ++i) {
        std::vector<char> t = touched;
        t[pending[i].a] = t[pending[i].b] = 1;
        std::vector<char> later(static_cast<std::size_t>(n), 0);
        for (std::size_t j = 0; j < pending.size(); ++j)
          if (j != i) later[pending[j].a] = later[pending[j].b] = 1;
        long long boundary = 0;
        for (int v = 0; v < n; ++v) boundary += t[v] && later[v];
        long long key = boundary * 1000 + static_cast<long long>(pending[i].rep.size());
        if (best_key < 0 || key < best_key) {
          best = i;
          best_key = key;
        }
      }
      touched[pending[best].a] = touched[pending[best].b] = 1;
      free_.push_back(std::move(pending[best]));
      pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
    }
  }

  std::vector<Word> allowed_for(Vertex a, Vertex b, const Permutation& p) const {
    std::vector<Word> m(static_cast<std::size_t>(words_), 0);
    for (long long i = 0; i < total_; ++i)
      if (p[static_cast<std::size_t>(color_of(a, i))] != color_of(b, i)) m[static_cast<std::size_t>(i / 64)] |= Word{1} << (i % 64);
    return m;
  }

  const Configuration& cfg_;
  std::vector<ColorMask> tuple_;
  std::map<int, Permutation> fixed_;
  std::vector<std::vector<int>> radix_;
  std::vector<std::vector<int>> color_of_;
  long long total_ = 0;
  int words_ = 0;
  std::vector<Word> base_;
  std::vector<Choices> free_;
  std::vector<Projection> proj_;
};

/// Decides, for one instance space, whether every completion satisfies a monotone
/// predicate on the surviving coloring set (if a set fails, so do its subsets).
class SpaceSearch {
 public:
  using Predicate = std::function<bool(const Word*)>;

  SpaceSearch(const InstanceSpace& space, Predicate ok, const CheckOptions& opt, std::atomic<long long>& nodes,
              std::atomic<bool>& abort)
      : space_(space), ok_(std::move(ok)), opt_(opt), nodes_(nodes), abort_(abort) {
    const auto depth = space.free_edges().size();
    stack_.assign((depth + 1) * static_cast<std::size_t>(space.words()), 0);
    for (std::size_t d = 0; d <= depth; ++d)
      memo_.emplace_back(space.projection(d).words, opt.memo_bytes / (depth + 1));
    key_.resize(static_cast<std::size_t>(space.projection(0).words) + 1);
    choice_.assign(depth, 0);
  }

  enum class Result { kOk, kFail, kAborted };

  Result run() {
    std::copy(space_.base().begin(), space_.base().end(), stack_.begin());
    if (!ok_(stack_.data())) {
      failing_ = std::vector<int>(space_.free_edges().size(), 0);
      return Result::kFail;
    }
    return dfs(0);
  }

  /// Option indices of the first failing assignment (valid after kFail).
  const std::vector<int>& failing() const { return failing_; }
  long long local_nodes() const noexcept { return local_nodes_; }
  long long pruned() const noexcept { return pruned_; }

  /// Visits leaves with their surviving sets (used for statistics over margins).
  std::function<void(const Word*)> on_leaf;

 private:
  Result dfs(std::size_t depth) {
    const auto& free = space_.free_edges();
    const int W = space_.words();
    ++local_nodes_;
    if ((local_nodes_ & 0xfff) == 0) {
      long long total = nodes_.fetch_add(0x1000) + 0x1000;
      if (abort_.load(std::memory_order_relaxed) || (opt_.node_budget > 0 && total > opt_.node_budget)) return Result::kAborted;
    }
    const Word* cur = &stack_[depth * static_cast<std::size_t>(W)];
    if (depth == free.size()) {
      if (on_leaf) on_leaf(cur);
      return Result::kOk;
    }
    Word* next = &stack_[(depth + 1) * static_cast<std::size_t>(W)];
    const auto& ch = free[depth];
    const int options = static_cast<int>(ch.rep.size());
    for (int o = 0; o < options; ++o) {
      const Word* a = &ch.allowed[static_cast<std::size_t>(o) * static_cast<std::size_t>(W)];
      for (int w = 0; w < W; ++w) next[w] = cur[w] & a[w];
      choice_[depth] = o;
      if (!ok_(next)) {
        failing_ = choice_;
        for (std::size_t d = depth + 1; d < choice_.size(); ++d) failing_[d] = 0;
        return Result::kFail;
      }
      if (opt_.memo) {
        project(depth + 1, next);
        if (memo_[depth + 1].contains(key_.data())) {
          ++pruned_;
          continue;
        }
      }
      Result r = dfs(depth + 1);
      if (r != Result::kOk) return r;
      if (opt_.memo) {
        project(depth + 1, next);
        memo_[depth + 1].insert(key_.data());
      }
    }
    return Result::kOk;
  }

  void project(std::size_t depth, const Word* m) {
    const auto& pr = space_.projection(depth);
    std::fill(key_.begin(), key_.begin() + pr.words, 0);
    for (int w = 0; w < space_.words(); ++w)
      for (Word bits = m[w]; bits; bits &= bits - 1) {
        auto i = static_cast<std::size_t>(w * 64 + std::countr_zero(bits));
        key_[pr.index[i] / 64] |= Word{1} << (pr.index[i] % 64);
      }
  }

  const InstanceSpace& space_;
  Predicate ok_;
  const CheckOptions& opt_;
  std::atomic<long long>& nodes_;
  std::atomic<bool>& abort_;
  std::vector<Word> stack_;
  std::vector<MaskMemo> memo_;
  std::vector<Word> key_;
  std::vector<int> choice_;
  std::vector<int> failing_;
  long long local_nodes_ = 0;
  long long pruned_ = 0;
};

inline bool any_bit(const Word* m, int words) {
  for (int w = 0; w < words; ++w)
    if (m[w]) return true;
  return false;
}

inline bool intersects(const Word* a, const std::vector<Word>& b) {
  for (std::size_t w = 0; w < b.size(); ++w)
    if (a[w] & b[w]) return true;
  return false;
}

}  // namespace detail

/// True iff no complete assignment of available colors is independent
/// (plain exhaustive enumeration, independent of the search code).
inline bool verify_witness(const CoverInstance& w, long long* candidates = nullptr) {
  const int n = w.order();
  std::vector<std::vector<int>> lists(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    for (int c = 0; c < w.k(); ++c)
      if (w.lists.allows(v, c)) lists[v].push_back(c);
  for (const auto& l : lists)
    if (l.empty()) return true;
  std::vector<std::size_t> digit(static_cast<std::size_t>(n), 0);
  Transversal t(n);
  long long count = 0;
  while (true) {
    for (int v = 0; v < n; ++v) t.color[v] = lists[v][digit[v]];
    ++count;
    bool ok = true;
    for (int e = 0; e < w.graph.size() && ok; ++e) {
      const Edge& ed = w.graph.edge(e);
      ok = w.matchings.sigma(e)[static_cast<std::size_t>(t.color[ed.u])] != t.color[ed.v];
    }
    if (ok) {
      if (candidates) *candidates = count;
      return false;
    }
    int v = n - 1;
    while (v >= 0 && ++digit[v] == lists[v].size()) digit[v--] = 0;
    if (v < 0) break;
  }
  if (candidates) *candidates = count;
  return true;
}

/// Exhaustive (or sampled) verification of a configuration.
inline Verdict check_reducible(const Configuration& cfg, const CheckOptions& opt = {}) {
  using namespace detail;
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  Verdict out;

  std::vector<Edge> forest;
  if (opt.straighten) forest = spanning_forest(cfg.local, cfg.tree);
  const bool connected_forest = static_cast<int>(forest.size()) == cfg.local.order() - 1;
  const bool canonical = opt.straighten && opt.canonical_residuals && connected_forest;
  const auto tuples = residual_tuples(cfg, canonical, opt.supersets);

  // The monotone predicate checked on surviving coloring sets.
  auto make_predicate = [&](const InstanceSpace& space, std::atomic<int>* worst) -> SpaceSearch::Predicate {
    const int W = space.words();
    if (cfg.kind == ConfigKind::kTransversal) return [W](const Word* m) { return any_bit(m, W); };
    auto per_color = std::make_shared<std::vector<std::vector<Word>>>();
    for (int c = 0; c < cfg.k; ++c) per_color->push_back(space.with_color(cfg.pivot, c));
    ColorMask pivot_colors = space.tuple()[static_cast<std::size_t>(cfg.pivot)];
    int max_bad = cfg.max_bad;
    return [per_color, pivot_colors, max_bad, worst](const Word* m) {
      int bad = 0;
      for (ColorMask p = pivot_colors; p; p &= p - 1)
        bad += !intersects(m, (*per_color)[static_cast<std::size_t>(std::countr_zero(p))]);
      if (worst) {
        int seen = worst->load();
        while (bad > seen && !worst->compare_exchange_weak(seen, bad)) {}
      }
      return bad <= max_bad;
    };
  };

  std::atomic<long long> nodes{0};
  std::atomic<bool> abort{false};
  std::atomic<int> worst{-1};
  std::atomic<long long> pruned{0};

  auto finish = [&](Verdict v) {
    v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.tuples = static_cast<long long>(tuples.size());
    if (cfg.kind == ConfigKind::kPrecolorMargin) v.max_bad = worst.load();
    return v;
  };

  if (opt.mode == Mode::kSampled) {
    std::mt19937_64 rng(opt.seed);
    for (long long s = 0; s < opt.samples && !tuples.empty(); ++s) {
      const auto& tuple = tuples[std::uniform_int_distribution<std::size_t>(0, tuples.size() - 1)(rng)];
      InstanceSpace space(cfg, tuple, forest, opt.restrict_injections);
      auto ok = make_predicate(space, &worst);
      std::vector<Word> m = space.base();
      std::vector<int> choice;
      for (const auto& ch : space.free_edges()) {
        int o = std::uniform_int_distribution<int>(0, static_cast<int>(ch.rep.size()) - 1)(rng);
        choice.push_back(o);
        for (int w = 0; w < space.words(); ++w) m[w] &= ch.allowed[static_cast<std::size_t>(o * space.words() + w)];
      }
      ++out.enumerated;
      if (!ok(m.data())) {
        out.status = Status::kNotReducible;
        out.witness = space.build(choice);
        return finish(out);
      }
    }
    out.status = Status::kInconclusive;
    out.note = "no counterexample among sampled instances";
    return finish(out);
  }

  // FULL: tuples are the work items; the lowest failing item wins.
  std::atomic<std::size_t> next_item{0};
  std::atomic<std::size_t> first_fail{tuples.size()};
  std::mutex mu;
  std::map<std::size_t, CoverInstance> witnesses;
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next_item.fetch_add(1);
      if (i >= tuples.size() || i > first_fail.load() || abort.load()) return;
      InstanceSpace space(cfg, tuples[i], forest, opt.restrict_injections);
      SpaceSearch search(space, make_predicate(space, &worst), opt, nodes, abort);
      auto r = search.run();
      const long long total = nodes.fetch_add(search.local_nodes() & 0xfff) + (search.local_nodes() & 0xfff);
      pruned.fetch_add(search.pruned());
      if (r == SpaceSearch::Result::kOk && opt.node_budget > 0 && total > opt.node_budget &&
          i + 1 < tuples.size())
        r = SpaceSearch::Result::kAborted;
      if (r == SpaceSearch::Result::kAborted) {
        abort = true;
        return;
      }
      if (r == SpaceSearch::Result::kFail) {
        std::lock_guard lock(mu);
        witnesses.emplace(i, space.build(search.failing()));
        std::size_t cur = first_fail.load();
        while (i < cur && !first_fail.compare_exchange_weak(cur, i)) {}
      }
    }
  };
  const int workers = std::max(1, opt.workers);
  if (workers == 1) worker();
  else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  out.enumerated = nodes.load();
  out.pruned = pruned.load();
  if (!witnesses.empty()) {
    out.status = Status::kNotReducible;
    out.witness = witnesses.begin()->second;
  } else if (abort.load()) {
    out.status = Status::kInconclusive;
    out.note = "node budget exceeded";
  } else {
    out.status = Status::kReducible;
  }
  return finish(out);
}

/// Selection step of a proof: pick the smallest color at `vertex` that leaves
/// `successor` with at least `keep` available colors.
struct PivotStep {
  Vertex vertex = -1;
  Vertex successor = -1;
  int keep = 2;
};

struct GreedyCertificate {
  std::vector<PivotStep> pivots;
  std::vector<Vertex> order;
};

/// True iff, on every enumerated instance, the pivot selections succeed and the
/// remaining vertices can then be colored greedily in `order`.
inline bool check_greedy_certificate(const Configuration& cfg, const GreedyCertificate& cert,
                                     const CheckOptions& opt = {}, CoverInstance* failing = nullptr) {
  using namespace detail;
  cfg.validate();
  std::vector<char> covered(static_cast<std::size_t>(cfg.local.order()), 0);
  for (const auto& p : cert.pivots) {
    if (!cfg.local.valid(p.vertex) || !cfg.local.valid(p.successor) || p.keep < 0)
      throw ContractViolation("check_greedy_certificate: malformed pivot rule");
    if (covered[p.vertex]++) throw ContractViolation("check_greedy_certificate: vertex selected twice");
  }
  for (Vertex v : cert.order) {
    if (!cfg.local.valid(v) || covered[v]++) throw ContractViolation("check_greedy_certificate: order is not a permutation");
  }
  if (std::count(covered.begin(), covered.end(), 1) != cfg.local.order())
    throw ContractViolation("check_greedy_certificate: order misses a vertex");

  std::vector<Edge> forest;
  if (opt.straighten) forest = spanning_forest(cfg.local, cfg.tree);
  const bool canonical = opt.straighten && opt.canonical_residuals &&
                         static_cast<int>(forest.size()) == cfg.local.order() - 1;
  for (const auto& tuple : residual_tuples(cfg, canonical, opt.supersets)) {
    InstanceSpace space(cfg, tuple, forest, opt.restrict_injections);
    const auto& free = space.free_edges();
    std::vector<int> choice(free.size(), 0);
    bool result = true;
    auto leaf = [&]() {
      CoverInstance inst = space.build(choice);
      Transversal t(cfg.local.order());
      for (const auto& p : cert.pivots) {
        ColorMask m = residual(inst, t, p.vertex);
        bool found = false;
        for (; m; m &= m - 1) {
          t.color[p.vertex] = std::countr_zero(m);
          if (popcount(residual(inst, t, p.successor)) >= p.keep) {
            found = true;
            break;
          }
        }
        if (!found) return false;
      }
      for (Vertex v : cert.order) {
        ColorMask m = residual(inst, t, v);
        if (!m) return false;
        t.color[v] = std::countr_zero(m);
      }
      return true;
    };
    auto rec = [&](auto&& self, std::size_t d) -> bool {
      if (d == free.size()) return leaf();
      for (int o = 0; o < static_cast<int>(free[d].rep.size()); ++o) {
        choice[d] = o;
        if (!self(self, d + 1)) return false;
      }
      return true;
    };
    result = rec(rec, 0);
    if (!result) {
      if (failing) *failing = space.build(choice);
      return false;
    }
  }
  return true;
}

struct MarginReport {
  bool ok = false;
  int max_bad = -1;
  Verdict verdict;
};

/// Precoloring margin: over every enumerated instance, at most `max_bad` colors of
/// the pivot leave the rest uncolorable.
inline MarginReport check_precolor_margin(const Configuration& cfg, const CheckOptions& opt = {}) {
  if (cfg.kind != ConfigKind::kPrecolorMargin)
    throw ContractViolation("check_precolor_margin: " + cfg.label + " is not a margin configuration");
  MarginReport r;
  r.verdict = check_reducible(cfg, opt);
  r.ok = r.verdict.status == Status::kReducible;
  r.max_bad = r.verdict.max_bad;
  return r;
}

/// Colors of `pivot` that block every transversal of `inst` (brute force).
inline std::vector<int> blocked_colors(const CoverInstance& inst, Vertex pivot) {
  std::vector<int> out;
  for (int c = 0; c < inst.k(); ++c) {
    if (!inst.lists.allows(pivot, c)) continue;
    ListAssignment l = inst.lists;
    l.available[static_cast<std::size_t>(pivot)] = ColorMask{1} << c;
    if (verify_witness(CoverInstance(inst.graph, l, inst.matchings))) out.push_back(c);
  }
  return out;
}

/// Case analysis of the 7-cluster proof, replayed as enumeration facts. For each
/// combination of the u-w, u-x and w-x matchings, every "select these colors and
/// finish greedily" step whose trigger holds is checked for all completions of the
/// remaining edges; combinations no step settles must show one of the two
/// matching patterns (b) or (c) between x and {u, w}.
struct StructureReport {
  long long triples = 0;
  long long closed = 0;
  long long pattern_b = 0;
  long long pattern_c = 0;
  long long unexpected = 0;    // left open but matching neither pattern
  long long failed_steps = 0;  // a selection step with a non-extendable completion
  std::optional<CoverInstance> example;

  bool holds() const noexcept { return unexpected == 0 && failed_steps == 0; }
};

inline StructureReport check_seven_cluster_structure(const Configuration& cfg) {
  using namespace detail;
  StructureReport rep;
  const Vertex u = cfg.vertex("u"), v = cfg.vertex("v"), w = cfg.vertex("w"), x = cfg.vertex("x");
  const int e_uw = cfg.local.edge_index(u, w), e_ux = cfg.local.edge_index(u, x), e_wx = cfg.local.edge_index(w, x);
  if (e_uw < 0 || e_ux < 0 || e_wx < 0 || cfg.floors[v] != 2)
    throw ContractViolation(cfg.label + ": not shaped like the 7-cluster configuration");
  const auto forest = spanning_forest(cfg.local, cfg.tree);
  for (const auto& e : forest)
    for (int s : {e_uw, e_ux, e_wx})
      if (cfg.local.edge(s) == e) throw ContractViolation(cfg.label + ": a structural edge is straightened");

  CheckOptions opt;
  std::atomic<long long> nodes{0};
  std::atomic<bool> abort{false};

  // v keeps {0, 1}; u and w add one color each, (2, 2) or (2, 3) up to renaming.
  for (auto [a, b] : {std::pair{2, 2}, std::pair{2, 3}}) {
    std::vector<ColorMask> tuple(static_cast<std::size_t>(cfg.local.order()), full_mask(cfg.k));
    tuple[v] = 0b11;
    tuple[u] = 0b11 | ColorMask{1} << a;
    tuple[w] = 0b11 | ColorMask{1} << b;
    InstanceSpace base(cfg, tuple, forest, true);
    std::map<int, const std::vector<Permutation>*> options;
    for (const auto& ch : base.free_edges()) options[ch.edge] = &ch.rep;

    std::map<int, Permutation> fixed;
    auto matched = [&](Vertex p, int cp, Vertex q, int cq) {
      int e = cfg.local.edge_index(p, q);
      const auto& perm = fixed.count(e) ? fixed.at(e) : identity_permutation(cfg.k);
      return cfg.local.edge(e).u == p ? perm[cp] == cq : perm[cq] == cp;
    };
    auto extends = [&](std::initializer_list<std::pair<Vertex, int>> pick) {
      auto t = tuple;
      for (auto [p, c] : pick) t[p] = ColorMask{1} << c;
      InstanceSpace space(cfg, t, forest, true, fixed);
      SpaceSearch search(space, [W = space.words()](const Word* m) { return any_bit(m, W); }, opt, nodes, abort);
      if (search.run() == SpaceSearch::Result::kOk) return true;
      if (!rep.example) rep.example = space.build(search.failing());
      return false;
    };
    // 1: settled, -1: the step's claim fails.
    auto step = [&](std::initializer_list<std::pair<Vertex, int>> pick) { return extends(pick) ? 1 : -1; };

    auto classify = [&]() -> int {  // 1 closed, 2 pattern b, 3 pattern c, 0 unexpected, -1 failed
      if (!matched(u, a, w, b)) return step({{u, a}, {w, b}});
      for (int i : {0, 1}) {
        if (matched(u, i, x, i) || matched(w, i, x, i)) return step({{x, i}, {v, i}});
      }
      for (int i : {0, 1}) {
        bool to_u = false, to_w = false;
        for (int c : {0, 1, a}) to_u |= matched(x, i, u, c);
        for (int c : {0, 1, b}) to_w |= matched(x, i, w, c);
        if (!to_u || !to_w) return step({{x, i}, {v, i}});
      }
      int one = 0, two = 1;
      if (!matched(x, one, u, two)) {
        if (!matched(x, two, u, one)) return 0;
        std::swap(one, two);
      }
      if (matched(x, two, u, one)) {
        if (matched(x, one, w, b)) return step({{u, two}, {w, b}});
        if (matched(x, two, w, b)) return step({{u, one}, {w, b}});
        return matched(x, one, w, two) && matched(x, two, w, one) ? 2 : 0;
      }
      if (matched(x, two, u, a)) {
        if (matched(x, one, w, b)) return step({{u, two}, {w, b}});
        if (matched(x, two, w, one)) return step({{u, a}, {w, one}});
        return matched(x, one, w, two) && matched(x, two, w, b) ? 3 : 0;
      }
      return 0;
    };

    for (const auto& p1 : *options.at(e_uw))
      for (const auto& p2 : *options.at(e_ux))
        for (const auto& p3 : *options.at(e_wx)) {
          fixed = {{e_uw, p1}, {e_ux, p2}, {e_wx, p3}};
          ++rep.triples;
          switch (classify()) {
            case 1: ++rep.closed; break;
            case 2: ++rep.pattern_b; break;
            case 3: ++rep.pattern_c; break;
            case -1: ++rep.failed_steps; break;
            default:
              ++rep.unexpected;
              if (!rep.example) rep.example = InstanceSpace(cfg, tuple, forest, true, fixed).build(
                                    std::vector<int>(base.free_edges().size() - 3, 0));
          }
        }
  }
  return rep;
}

}  // namespace dpc
