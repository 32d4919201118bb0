#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dpc/discharging.hpp"
#include "dpc/patterns.hpp"
#include "dpc/plane_graph.hpp"
#include "dpc/reducibility.hpp"

namespace dpc {

using json = nlohmann::ordered_json;

/// A graph as read from disk, keeping optional fields so it can be written back unchanged.
struct GraphFile {
  Graph graph;
  std::optional<std::vector<std::vector<Vertex>>> rotation;
  std::optional<std::vector<Vertex>> outer_face;
  std::string name;
  std::vector<std::string> names;  // vertex names
  std::optional<int> code;         // catalog shape code
  std::string labels;              // role label per vertex

  bool has_embedding() const noexcept { return rotation.has_value(); }

  PlaneGraph plane() const {
    if (!rotation) throw ContractViolation("graph " + name + " has no rotation system");
    return PlaneGraph(graph, *rotation, outer_face);
  }
};

namespace detail {

inline std::string line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(std::min(byte, text.size())), '\n'));
  return "line " + std::to_string(line);
}

}  // namespace detail

/// Parses JSON text; syntax errors name the source and line.
inline json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": malformed JSON at " + detail::line_of(text, e.byte));
  }
}

namespace detail {

inline int get_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ParseError("expected an integer", field);
  return j.get<int>();
}

inline Vertex get_vertex(const json& j, const std::string& field, int n) {
  int v = get_int(j, field);
  if (v < 0 || v >= n) throw ParseError("vertex " + std::to_string(v) + " out of range", field);
  return v;
}

inline Vertex key_vertex(const std::string& key, const std::string& field, int n) {
  std::size_t used = 0;
  Vertex v = -1;
  try {
    v = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != key.size()) throw ParseError("key is not a vertex", field);
  if (v < 0 || v >= n) throw ParseError("vertex " + key + " out of range", field);
  return v;
}

inline std::string edge_key(Vertex a, Vertex b) {
  return std::to_string(std::min(a, b)) + "-" + std::to_string(std::max(a, b));
}

inline std::pair<Vertex, Vertex> parse_edge_key(const std::string& key, const std::string& field) {
  auto dash = key.find('-');
  try {
    if (dash == std::string::npos) throw std::invalid_argument("no dash");
    std::size_t p1 = 0, p2 = 0;
    Vertex a = std::stoi(key.substr(0, dash), &p1), b = std::stoi(key.substr(dash + 1), &p2);
    if (p1 != dash || p2 != key.size() - dash - 1) throw std::invalid_argument("trailing");
    return {a, b};
  } catch (const std::exception&) {
    throw ParseError("edge key must look like \"u-v\"", field);
  }
}

}  // namespace detail

inline GraphFile parse_graph_json(const json& j) {
  if (!j.is_object()) throw ParseError("graph must be a JSON object");
  if (!j.contains("n")) throw ParseError("missing field", "n");
  GraphFile out;
  const int n = detail::get_int(j["n"], "n");
  if (n < 0) throw ParseError("negative vertex count", "n");
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw ParseError("expected an array", "edges");
    std::set<Edge> seen;
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
      const std::string field = "edges[" + std::to_string(i) + "]";
      const auto& e = j["edges"][i];
      if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a pair", field);
      Vertex a = detail::get_vertex(e[0], field, n), b = detail::get_vertex(e[1], field, n);
      if (a == b) throw ParseError("loop at vertex " + std::to_string(a), field);
      if (!seen.emplace(a, b).second) throw ParseError("parallel edge " + detail::edge_key(a, b), field);
      edges.emplace_back(a, b);
    }
  }
  out.graph = Graph(n, std::span<const Edge>(edges));
  if (j.contains("name")) out.name = j["name"].get<std::string>();
  if (j.contains("names")) out.names = j["names"].get<std::vector<std::string>>();
  if (j.contains("code")) out.code = detail::get_int(j["code"], "code");
  if (j.contains("labels")) out.labels = j["labels"].get<std::string>();
  if (j.contains("rotation")) {
    const auto& r = j["rotation"];
    if (!r.is_object()) throw ParseError("expected an object keyed by vertex", "rotation");
    std::vector<std::vector<Vertex>> rot(static_cast<std::size_t>(n));
    for (auto it = r.begin(); it != r.end(); ++it) {
      const std::string field = "rotation." + it.key();
      Vertex v = detail::key_vertex(it.key(), field, n);
      if (!it.value().is_array()) throw ParseError("expected an array", field);
      for (std::size_t i = 0; i < it.value().size(); ++i) rot[v].push_back(detail::get_vertex(it.value()[i], field, n));
    }
    out.rotation = std::move(rot);
  }
  if (j.contains("outer_face")) {
    std::vector<Vertex> w;
    for (std::size_t i = 0; i < j["outer_face"].size(); ++i)
      w.push_back(detail::get_vertex(j["outer_face"][i], "outer_face", n));
    out.outer_face = std::move(w);
  }
  if (out.rotation) {
    try {
      (void)out.plane();
    } catch (const MalformedEmbedding& e) {
      throw ParseError(e.what(), out.outer_face && std::string(e.what()).find("outer_face") != std::string::npos
                                     ? "outer_face"
                                     : "rotation");
    }
  }
  return out;
}

inline json to_json(const GraphFile& f) {
  json j;
  if (!f.name.empty()) j["name"] = f.name;
  j["n"] = f.graph.order();
  j["edges"] = json::array();
  for (const auto& e : f.graph.edges()) j["edges"].push_back({e.u, e.v});
  if (f.rotation) {
    json r = json::object();
    for (std::size_t v = 0; v < f.rotation->size(); ++v) r[std::to_string(v)] = (*f.rotation)[v];
    j["rotation"] = r;
  }
  if (f.outer_face) j["outer_face"] = *f.outer_face;
  if (!f.names.empty()) j["names"] = f.names;
  if (f.code) j["code"] = *f.code;
  if (!f.labels.empty()) j["labels"] = f.labels;
  return j;
}

inline GraphFile graph_file_of(const PlaneGraph& pg, std::string name = {}) {
  GraphFile f;
  f.graph = pg.graph();
  f.rotation = pg.rotation();
  if (pg.face_count()) f.outer_face = pg.outer().walk;
  f.name = std::move(name);
  return f;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline GraphFile read_graph_file(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return parse_graph_json(parse_text(text, path.string()));
  } catch (const ParseError& e) {
    if (std::string(e.what()).rfind(path.string(), 0) == 0) throw;
    throw e.in(path.string());
  }
}

inline void write_json_file(const std::filesystem::path& path, const json& j) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

// ---- matchings and cover instances ----

inline MatchingAssignment parse_matching_json(const json& j, const Graph& g, int k) {
  std::vector<Permutation> sigma(static_cast<std::size_t>(g.size()), identity_permutation(k));
  if (!j.contains("sigma")) return MatchingAssignment(k, std::move(sigma));
  const auto& s = j["sigma"];
  if (!s.is_object()) throw ParseError("expected an object keyed by \"u-v\"", "sigma");
  for (auto it = s.begin(); it != s.end(); ++it) {
    const std::string field = "sigma." + it.key();
    auto [a, b] = detail::parse_edge_key(it.key(), field);
    int e = g.edge_index(a, b);
    if (e < 0) throw ParseError("no such edge", field);
    if (!it.value().is_array() || static_cast<int>(it.value().size()) != k)
      throw ParseError("expected " + std::to_string(k) + " images", field);
    Permutation p;
    for (const auto& c : it.value()) p.push_back(detail::get_int(c, field) - 1);
    if (!is_permutation_of(p, k)) throw ParseError("images are not a bijection on 1..k", field);
    sigma[static_cast<std::size_t>(e)] = a < b ? p : inverse(p);
  }
  return MatchingAssignment(k, std::move(sigma));
}

inline json matching_to_json(const Graph& g, const MatchingAssignment& m) {
  json j;
  j["k"] = m.k();
  json s = json::object();
  for (int e = 0; e < g.size(); ++e) {
    json images = json::array();
    for (int c : m.sigma(e)) images.push_back(c + 1);
    s[detail::edge_key(g.edge(e).u, g.edge(e).v)] = images;
  }
  j["sigma"] = s;
  return j;
}

/// Cover instance file: graph fields plus k, available lists, sigma and an optional precoloring.
struct InstanceFile {
  GraphFile graph;
  CoverInstance instance;
  Transversal precolor;
};

inline InstanceFile parse_instance_json(const json& j, int default_k = 4) {
  InstanceFile f;
  f.graph = parse_graph_json(j);
  const int k = j.contains("k") ? detail::get_int(j["k"], "k") : default_k;
  if (k < 1 || k > kMaxColors) throw ParseError("k must lie in 1..8", "k");
  const int n = f.graph.graph.order();
  ListAssignment lists = ListAssignment::full(n, k);
  if (j.contains("available")) {
    const auto& a = j["available"];
    if (!a.is_object()) throw ParseError("expected an object keyed by vertex", "available");
    for (auto it = a.begin(); it != a.end(); ++it) {
      const std::string field = "available." + it.key();
      Vertex v = detail::key_vertex(it.key(), field, n);
      ColorMask m = 0;
      for (const auto& c : it.value()) {
        int color = detail::get_int(c, field);
        if (color < 1 || color > k) throw ParseError("color outside 1..k", field);
        m |= ColorMask{1} << (color - 1);
      }
      lists.available[v] = m;
    }
  }
  f.instance = CoverInstance(f.graph.graph, lists, parse_matching_json(j, f.graph.graph, k));
  f.precolor = Transversal(n);
  if (j.contains("precolor")) {
    for (auto it = j["precolor"].begin(); it != j["precolor"].end(); ++it) {
      const std::string field = "precolor." + it.key();
      Vertex v = detail::key_vertex(it.key(), field, n);
      int color = detail::get_int(it.value(), field);
      if (color < 1 || color > k) throw ParseError("color outside 1..k", field);
      f.precolor.color[v] = color - 1;
    }
  }
  return f;
}

inline json instance_to_json(const CoverInstance& inst, const std::vector<std::string>& names = {},
                             const std::string& name = {}) {
  GraphFile gf;
  gf.graph = inst.graph;
  gf.names = names;
  gf.name = name;
  json j = to_json(gf);
  j["k"] = inst.k();
  json avail = json::object();
  for (Vertex v = 0; v < inst.order(); ++v) {
    json cs = json::array();
    for (int c = 0; c < inst.k(); ++c)
      if (inst.lists.allows(v, c)) cs.push_back(c + 1);
    avail[std::to_string(v)] = cs;
  }
  j["available"] = avail;
  j["sigma"] = matching_to_json(inst.graph, inst.matchings)["sigma"];
  return j;
}

inline json transversal_to_json(const Transversal& t) {
  json j = json::array();
  for (int c : t.color) j.push_back(c < 0 ? json(nullptr) : json(c + 1));
  return j;
}

// ---- reports ----

inline json verdict_to_json(const Verdict& v, const std::vector<std::string>& names, bool timing = true) {
  json j;
  j["status"] = to_string(v.status);
  if (v.witness) j["witness"] = instance_to_json(*v.witness, names);
  j["enumerated"] = v.enumerated;
  j["pruned"] = v.pruned;
  j["seconds"] = timing ? v.seconds : 0.0;
  j["tuples"] = v.tuples;
  if (v.max_bad >= 0) j["max_bad"] = v.max_bad;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

inline json transfer_to_json(const Transfer& t) {
  json j;
  j["rule"] = t.rule;
  j["from"] = t.from;
  j["to"] = t.to;
  j["amount"] = t.amount;
  if (!t.note.empty()) j["note"] = t.note;
  return j;
}

inline json audit_to_json(const AuditReport& r) {
  auto checks = [](const std::vector<Check>& cs) {
    json a = json::array();
    for (const auto& c : cs) {
      json x;
      x["name"] = c.name;
      x["ok"] = c.ok;
      if (!c.witness.empty()) x["witness"] = c.witness;
      a.push_back(x);
    }
    return a;
  };
  json j;
  j["class_checks"] = checks(r.class_checks);
  j["lemma_preconditions"] = checks(r.lemma_preconditions);
  json acc = json::object();
  for (const auto& id : r.ledger.accounts()) acc[id] = r.ledger.balance(id);
  j["accounts"] = acc;
  json tr = json::array();
  for (const auto& t : r.ledger.transfers()) tr.push_back(transfer_to_json(t));
  j["transfers"] = tr;
  json oi;
  oi["applicable"] = r.outer_identity.applicable;
  oi["e"] = r.outer_identity.e;
  oi["f3"] = r.outer_identity.f3;
  oi["value"] = r.outer_identity.expected;
  oi["ledger"] = r.outer_identity.ledger_value;
  oi["holds"] = r.outer_identity.holds();
  j["outer_identity"] = oi;
  j["initial_sum"] = r.initial_sum;
  j["final_sum"] = r.final_sum;
  j["clusters_start_at_minus_k"] = r.clusters_start_at_minus_k;
  j["cap_violations"] = r.cap_violations;
  j["negative"] = r.negative;
  j["notes"] = r.notes;
  if (!r.rule_error.empty()) j["rule_error"] = r.rule_error;
  j["verdict"] = r.verdict;
  return j;
}

// ---- configurations ----

/// {"label", "names": [...], "edges": ["a-b"], "floors": {name: int}, "tree": ["a-b"],
///  "proof_order"?: [...], "kind"?: "transversal" | "margin", "pivot"?, "max_bad"?, "k"?}
inline Configuration parse_configuration_json(const json& j) {
  if (!j.is_object()) throw ParseError("configuration must be a JSON object");
  for (const char* f : {"label", "names", "edges", "floors"})
    if (!j.contains(f)) throw ParseError("missing field", f);
  Configuration c;
  try {
    c = make_configuration(j["label"].get<std::string>(), j["names"].get<std::vector<std::string>>(),
                           j["edges"].get<std::vector<std::string>>(), j["floors"].get<std::map<std::string, int>>(),
                           j.value("tree", std::vector<std::string>{}));
    if (j.contains("proof_order"))
      for (const auto& n : j["proof_order"]) c.proof_order.push_back(c.vertex(n.get<std::string>()));
    if (j.contains("k")) c.k = j["k"].get<int>();
    const std::string kind = j.value("kind", std::string("transversal"));
    if (kind == "margin") c.kind = ConfigKind::kPrecolorMargin;
    else if (kind != "transversal") throw ParseError("kind must be \"transversal\" or \"margin\"", "kind");
    if (j.contains("pivot")) c.pivot = c.vertex(j["pivot"].get<std::string>());
    if (j.contains("max_bad")) c.max_bad = j["max_bad"].get<int>();
    c.validate();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad configuration: ") + e.what());
  } catch (const ContractViolation& e) {
    throw ParseError(e.what());
  }
  return c;
}

inline json configuration_to_json(const Configuration& c) {
  auto name_edge = [&](const Edge& e) { return c.names[e.u] + "-" + c.names[e.v]; };
  json j;
  j["label"] = c.label;
  j["names"] = c.names;
  j["edges"] = json::array();
  for (const auto& e : c.local.edges()) j["edges"].push_back(name_edge(e));
  json floors = json::object();
  for (std::size_t i = 0; i < c.names.size(); ++i) floors[c.names[i]] = c.floors[i];
  j["floors"] = floors;
  j["tree"] = json::array();
  for (const auto& e : c.tree) j["tree"].push_back(name_edge(e));
  if (!c.proof_order.empty()) {
    j["proof_order"] = json::array();
    for (Vertex v : c.proof_order) j["proof_order"].push_back(c.names[v]);
  }
  j["k"] = c.k;
  if (c.kind == ConfigKind::kPrecolorMargin) {
    j["kind"] = "margin";
    j["pivot"] = c.names[c.pivot];
    j["max_bad"] = c.max_bad;
  }
  return j;
}

// ---- plantri ASCII adapter ----

/// One line of plantri's ASCII output: "n list,list,..." with vertices named a, b, ...
/// and each list giving a vertex's neighbors in cyclic order.
inline GraphFile parse_plantri_line(const std::string& line) {
  std::istringstream in(line);
  int n = 0;
  std::string body;
  if (!(in >> n >> body) || n <= 0) throw ParseError("expected \"n adjacency-lists\"");
  auto index = [&](char c) -> Vertex {
    if (c >= 'a' && c <= 'z') return c - 'a';
    if (c >= 'A' && c <= 'Z') return 26 + (c - 'A');
    throw ParseError(std::string("bad vertex name '") + c + "'");
  };
  std::vector<std::vector<Vertex>> rot;
  std::string part;
  std::istringstream lists(body);
  while (std::getline(lists, part, ',')) {
    std::vector<Vertex> r;
    for (char c : part) r.push_back(index(c));
    rot.push_back(std::move(r));
  }
  if (static_cast<int>(rot.size()) != n) throw ParseError("vertex count does not match the number of lists");
  std::set<Edge> es;
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : rot[v]) {
      if (w >= n) throw ParseError("neighbor out of range");
      if (w == v) throw ParseError("loop at vertex " + std::to_string(v));
      es.emplace(v, w);
    }
  std::vector<Edge> list(es.begin(), es.end());
  GraphFile f;
  f.graph = Graph(n, std::span<const Edge>(list));
  f.rotation = std::move(rot);
  try {
    (void)f.plane();
  } catch (const MalformedEmbedding& e) {
    throw ParseError(e.what(), "rotation");
  }
  return f;
}

// ---- corpus ingestion ----

enum class CorpusFilter { kNoSevenCycles, kNoButterfly, kHasGoodTriangle };

inline CorpusFilter parse_filter(const std::string& s) {
  if (s == "no-7-cycles") return CorpusFilter::kNoSevenCycles;
  if (s == "no-butterfly") return CorpusFilter::kNoButterfly;
  if (s == "has-good-triangle") return CorpusFilter::kHasGoodTriangle;
  throw ContractViolation("unknown filter " + s);
}

inline const char* to_string(CorpusFilter f) {
  switch (f) {
    case CorpusFilter::kNoSevenCycles: return "no-7-cycles";
    case CorpusFilter::kNoButterfly: return "no-butterfly";
    case CorpusFilter::kHasGoodTriangle: return "has-good-triangle";
  }
  return "?";
}

/// The outer face is a 3-cycle that does not bound a 7-cluster.
inline bool outer_face_is_good_triangle(const PlaneGraph& pg) {
  if (!pg.face_count() || pg.outer().degree() != 3) return false;
  const auto& w = pg.outer().walk;
  return cycle_predicates(pg, {w[0], w[1], w[2]}).good();
}

inline bool passes(const GraphFile& f, CorpusFilter filter) {
  switch (filter) {
    case CorpusFilter::kNoSevenCycles: return !has_cycle_of_length(f.graph, 7);
    case CorpusFilter::kNoButterfly: return !contains_pattern(f.graph, butterfly_graph());
    case CorpusFilter::kHasGoodTriangle: return f.has_embedding() && outer_face_is_good_triangle(f.plane());
  }
  return false;
}

struct CorpusEntry {
  std::string source;  // file path, with ":line" for multi-record files
  GraphFile graph;
};

struct CorpusStats {
  long long read = 0;
  long long accepted = 0;
  long long unreadable = 0;
  std::map<std::string, long long> rejected;  // per filter; a graph counts against every filter it fails
  std::vector<std::string> warnings;
};

namespace detail {

inline void records_of(const std::filesystem::path& path, const std::function<void(std::string, std::optional<GraphFile>, std::string)>& emit) {
  std::string text;
  try {
    text = read_text(path);
  } catch (const ParseError& e) {
    emit(path.string(), std::nullopt, e.what());
    return;
  }
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return;
  // A single JSON document, or one record per line (JSON objects or plantri lines).
  if (text[first] == '{') {
    try {
      auto j = json::parse(text);
      emit(path.string(), parse_graph_json(j), "");
      return;
    } catch (const json::parse_error&) {
      // fall through to line mode
    } catch (const Error& e) {
      emit(path.string(), std::nullopt, e.what());
      return;
    }
  }
  std::istringstream lines(text);
  std::string line;
  for (int no = 1; std::getline(lines, line); ++no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string src = path.string() + ":" + std::to_string(no);
    try {
      if (line.find('{') != std::string::npos) emit(src, parse_graph_json(json::parse(line)), "");
      else emit(src, parse_plantri_line(line), "");
    } catch (const std::exception& e) {
      emit(src, std::nullopt, e.what());
    }
  }
}

}  // namespace detail

/// Streams graphs from a file or a directory (files in name order) that pass every filter.
inline CorpusStats ingest_corpus(const std::filesystem::path& path, const std::vector<CorpusFilter>& filters,
                                 const std::function<void(const CorpusEntry&)>& visit) {
  CorpusStats stats;
  for (auto f : filters) stats.rejected[to_string(f)] = 0;
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(path)) {
    for (const auto& e : std::filesystem::recursive_directory_iterator(path))
      if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
  } else if (std::filesystem::exists(path)) {
    files.push_back(path);
  } else {
    throw ParseError("corpus path does not exist: " + path.string());
  }
  for (const auto& file : files)
    detail::records_of(file, [&](std::string src, std::optional<GraphFile> g, std::string err) {
      if (!g) {
        ++stats.unreadable;
        stats.warnings.push_back(src + ": " + err);
        return;
      }
      ++stats.read;
      bool ok = true;
      for (auto f : filters)
        if (!passes(*g, f)) {
          ++stats.rejected[to_string(f)];
          ok = false;
        }
      if (!ok) return;
      ++stats.accepted;
      visit({std::move(src), std::move(*g)});
    });
  return stats;
}

inline std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path, const std::vector<CorpusFilter>& filters,
                                            CorpusStats* stats = nullptr) {
  std::vector<CorpusEntry> out;
  auto s = ingest_corpus(path, filters, [&](const CorpusEntry& e) { out.push_back(e); });
  if (stats) *stats = s;
  return out;
}

}  // namespace dpc
