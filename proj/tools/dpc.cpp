#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "dpc.hpp"

#ifndef DPC_DEFAULT_ASSETS
#define DPC_DEFAULT_ASSETS "assets"
#endif

namespace fs = std::filesystem;
using dpc::json;

namespace {

struct RunConfig {
  std::string verb;
  std::vector<std::string> inputs;
  int k = 4;
  bool k_given = false;
  std::string mode = "full";
  std::optional<std::uint64_t> seed;
  int workers = 1;
  long long budget = 0;
  std::string format = "json";
  bool deterministic = false;
  std::string assets = DPC_DEFAULT_ASSETS;

  void validate() const {
    if (k < 2 || k > dpc::kMaxColors) throw CLI::ValidationError("--k", "k must lie in [2, 8]");
    if (workers < 1) throw CLI::ValidationError("--workers", "worker count must be at least 1");
    if (mode == "sampled" && !seed) throw CLI::ValidationError("--seed", "sampled mode requires --seed");
  }
};

class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void row(std::vector<std::string> r) { rows_.push_back(std::move(r)); }

  void print(std::ostream& out) const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], r[i].size());
      }
    for (std::size_t n = 0; n < rows_.size(); ++n) {
      for (std::size_t i = 0; i < rows_[n].size(); ++i)
        out << std::left << std::setw(static_cast<int>(width[i]) + 2) << rows_[n][i];
      out << "\n";
      if (n == 0) {
        for (std::size_t i = 0; i < width.size(); ++i) out << std::string(width[i], '-') << "  ";
        out << "\n";
      }
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string str(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

/// Text mode: flat objects become key/value tables; arrays of objects become tables.
void print_text(const json& j, std::ostream& out) {
  std::vector<std::pair<std::string, const json*>> nested;
  Table kv({"field", "value"});
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.value().is_array() && !it.value().empty() && it.value()[0].is_object()) nested.emplace_back(it.key(), &it.value());
    else if (it.value().is_object() && it.value().size() > 6) nested.emplace_back(it.key(), &it.value());
    else kv.row({it.key(), str(it.value())});
  }
  kv.print(out);
  for (const auto& [name, value] : nested) {
    out << "\n" << name << "\n";
    if (value->is_array()) {
      std::vector<std::string> header;
      for (auto it = (*value)[0].begin(); it != (*value)[0].end(); ++it) header.push_back(it.key());
      Table t(header);
      for (const auto& row : *value) {
        std::vector<std::string> cells;
        for (const auto& h : header) cells.push_back(row.contains(h) ? str(row[h]) : "");
        t.row(cells);
      }
      t.print(out);
    } else {
      Table t({"key", "value"});
      for (auto it = value->begin(); it != value->end(); ++it) t.row({it.key(), str(it.value())});
      t.print(out);
    }
  }
}

void emit(const RunConfig& cfg, const json& j) {
  if (cfg.format == "text") print_text(j, std::cout);
  else std::cout << j.dump(2) << "\n";
}

double seconds_since(std::chrono::steady_clock::time_point t0, const RunConfig& cfg) {
  if (cfg.deterministic) return 0.0;
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- solve ----

json cmd_solve(const RunConfig& cfg, const std::string& matching_path, const std::string& precolor,
               bool random_matching, bool decompose) {
  json raw = dpc::parse_text(dpc::read_text(cfg.inputs.at(0)), cfg.inputs[0]);
  int k = cfg.k_given || !raw.contains("k") ? cfg.k : raw["k"].get<int>();
  raw["k"] = k;
  auto file = dpc::parse_instance_json(raw, k);
  dpc::CoverInstance inst = file.instance;
  if (random_matching) {
    std::mt19937_64 rng(cfg.seed.value_or(0));
    inst = dpc::CoverInstance(inst.graph, inst.lists, dpc::MatchingAssignment::random(inst.graph, k, rng));
  }
  if (!matching_path.empty()) {
    auto m = dpc::parse_text(dpc::read_text(matching_path), matching_path);
    if (m.contains("k") && m["k"].get<int>() != k) throw dpc::ParseError("matching k differs from instance k", "k");
    inst = dpc::CoverInstance(inst.graph, inst.lists, dpc::parse_matching_json(m, inst.graph, k));
  }
  dpc::Transversal partial = file.precolor;
  if (!precolor.empty()) {
    std::istringstream in(precolor);
    std::string item;
    while (std::getline(in, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw CLI::ValidationError("--precolor", "expected v=c pairs");
      int v = std::stoi(item.substr(0, eq)), c = std::stoi(item.substr(eq + 1));
      if (v < 0 || v >= inst.order() || c < 1 || c > k) throw CLI::ValidationError("--precolor", "pair out of range");
      partial.color[v] = c - 1;
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  dpc::SolverStats stats;
  dpc::SolverOptions opt;
  opt.decompose_separating = decompose;
  std::optional<dpc::Transversal> t;
  json out;
  if (!dpc::is_independent(inst, partial)) {
    out["verdict"] = "NONE";
    out["note"] = "precoloring is not independent";
  } else {
    if (decompose && file.graph.has_embedding()) t = dpc::find_transversal_decomposed(file.graph.plane(), inst, partial, opt, &stats);
    else t = dpc::find_transversal(inst, partial, opt, &stats);
    out["verdict"] = t ? "FOUND" : "NONE";
  }
  if (t) {
    out["transversal"] = dpc::transversal_to_json(*t);
    out["independent"] = dpc::is_independent(inst, *t);
  }
  out["k"] = k;
  out["nodes"] = stats.nodes;
  out["seconds"] = seconds_since(t0, cfg);
  return out;
}

// ---- detect ----

json cmd_detect(const RunConfig& cfg) {
  auto file = dpc::read_graph_file(cfg.inputs.at(0));
  json out;
  out["n"] = file.graph.order();
  out["m"] = file.graph.size();
  auto cyc = dpc::find_cycle_of_length(file.graph, 7);
  out["seven_cycle"] = cyc ? json(*cyc) : json(nullptr);
  auto bf = dpc::find_pattern(file.graph, dpc::butterfly_graph());
  out["butterfly"] = bf ? json(*bf) : json(nullptr);
  if (!file.has_embedding()) {
    out["clusters"] = json::array();
    out["note"] = "no rotation system; clusters not extracted";
    return out;
  }
  const auto pg = file.plane();
  out["faces"] = pg.face_count();
  out["outer_face"] = pg.outer().walk;
  json cl = json::array();
  for (const auto& c : dpc::extract_clusters(pg)) {
    auto cls = dpc::classify_cluster(pg, c);
    json x;
    x["id"] = c.id;
    x["k"] = c.k();
    x["code"] = cls.code;
    x["vertices"] = c.vertices;
    if (cls.classified()) {
      json roles = json::object();
      for (const auto& [label, v] : cls.roles()) roles[std::string(1, label)] = v;
      x["roles"] = roles;
    }
    if (!cls.note.empty()) x["note"] = cls.note;
    cl.push_back(x);
  }
  out["clusters"] = cl;
  json tri = json::array();
  for (const auto& t : dpc::triangles(file.graph)) {
    auto p = dpc::cycle_predicates(pg, t);
    json x;
    x["cycle"] = t;
    x["separating"] = p.separating;
    x["good"] = p.good();
    tri.push_back(x);
  }
  out["triangles"] = tri;
  return out;
}

// ---- reduce-check / witness-verify ----

json cmd_reduce_check(const RunConfig& cfg, const std::string& lemma, const std::string& config_path, long long count,
                      bool naive) {
  dpc::Configuration c;
  if (!config_path.empty()) c = dpc::parse_configuration_json(dpc::parse_text(dpc::read_text(config_path), config_path));
  else c = dpc::find_configuration(dpc::config_catalog(), lemma);
  dpc::CheckOptions opt;
  opt.mode = cfg.mode == "sampled" ? dpc::Mode::kSampled : dpc::Mode::kFull;
  opt.seed = cfg.seed.value_or(0);
  opt.samples = count;
  opt.workers = cfg.workers;
  opt.node_budget = cfg.budget;
  if (naive) {
    opt.straighten = false;
    opt.canonical_residuals = false;
    opt.restrict_injections = false;
    opt.supersets = true;
  }
  auto v = dpc::check_reducible(c, opt);
  json out;
  out["configuration"] = c.label;
  out["mode"] = cfg.mode;
  json body = dpc::verdict_to_json(v, c.names, !cfg.deterministic);
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  if (v.witness) out["witness_verified"] = dpc::verify_witness(*v.witness);
  return out;
}

json cmd_witness_verify(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  json raw = dpc::parse_text(dpc::read_text(cfg.inputs.at(0)), cfg.inputs[0]);
  auto file = dpc::parse_instance_json(raw, cfg.k);
  long long candidates = 0;
  bool none = dpc::verify_witness(file.instance, &candidates);
  json out;
  out["file"] = cfg.inputs[0];
  out["status"] = none ? "NO_TRANSVERSAL" : "TRANSVERSAL_FOUND";
  out["candidates"] = candidates;
  if (!none) out["transversal"] = dpc::transversal_to_json(*dpc::find_transversal(file.instance));
  out["seconds"] = seconds_since(t0, cfg);
  return out;
}

// ---- discharge ----

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

json cmd_discharge(const RunConfig& cfg, const std::string& action, const std::string& element, const std::string& order) {
  auto file = dpc::read_graph_file(cfg.inputs.at(0));
  auto rep = dpc::audit(file.plane(), order.empty() ? dpc::default_rule_order() : split_list(order));
  if (action == "audit") return dpc::audit_to_json(rep);
  if (element.empty()) throw CLI::ValidationError("--element", "explain needs --element");
  if (!rep.ledger.has(element)) throw dpc::ContractViolation("no account named " + element);
  json out;
  out["element"] = element;
  out["initial"] = rep.ledger.initial(element);
  json h = json::array();
  for (const auto& t : rep.ledger.history(element)) {
    json x = dpc::transfer_to_json(t);
    x["delta"] = t.to == element ? t.amount : -t.amount;
    x["charge"] = dpc::format_quarters(x["delta"].get<dpc::Quarters>());
    h.push_back(x);
  }
  out["history"] = h;
  out["final"] = rep.ledger.balance(element);
  out["final_charge"] = dpc::format_quarters(rep.ledger.balance(element));
  out["units"] = "quarters";
  return out;
}

// ---- corpus ----

json cmd_corpus(const RunConfig& cfg, const std::vector<std::string>& filter_names, int matchings) {
  std::vector<dpc::CorpusFilter> filters;
  for (const auto& f : filter_names) filters.push_back(dpc::parse_filter(f));
  std::mt19937_64 rng(cfg.seed.value_or(0));
  json rows = json::array();
  long long found = 0, none = 0;
  std::map<std::string, long long> verdicts;
  auto stats = dpc::ingest_corpus(cfg.inputs.at(0), filters, [&](const dpc::CorpusEntry& e) {
    json row;
    row["source"] = e.source;
    row["n"] = e.graph.graph.order();
    int ok = 0;
    for (int i = 0; i < matchings; ++i) {
      dpc::CoverInstance inst(e.graph.graph, dpc::ListAssignment::full(e.graph.graph.order(), cfg.k),
                              dpc::MatchingAssignment::random(e.graph.graph, cfg.k, rng));
      ok += dpc::find_transversal(inst).has_value();
    }
    found += ok;
    none += matchings - ok;
    row["found"] = ok;
    row["none"] = matchings - ok;
    if (e.graph.has_embedding()) {
      auto rep = dpc::audit(e.graph.plane());
      row["audit"] = rep.verdict;
      row["sum"] = rep.final_sum;
      row["outer_identity"] = rep.outer_identity.holds();
      ++verdicts[rep.verdict];
    } else {
      row["audit"] = "NO_EMBEDDING";
      ++verdicts["NO_EMBEDDING"];
    }
    rows.push_back(row);
  });
  json out;
  out["read"] = stats.read;
  out["accepted"] = stats.accepted;
  out["unreadable"] = stats.unreadable;
  out["rejected"] = stats.rejected;
  out["solve_found"] = found;
  out["solve_none"] = none;
  out["audit_verdicts"] = verdicts;
  out["warnings"] = stats.warnings;
  out["graphs"] = rows;
  for (const auto& w : stats.warnings) std::cerr << "warning: " << w << "\n";
  return out;
}

// ---- generate / assets ----

json cmd_generate(const RunConfig& cfg, int count, int vertices, const std::string& out_path) {
  std::mt19937_64 rng(cfg.seed.value_or(0));
  dpc::GenerateOptions opt;
  opt.vertices = vertices;
  std::ostringstream lines;
  for (int i = 0; i < count; ++i) {
    auto pg = dpc::random_plane_graph(opt, rng);
    lines << dpc::to_json(dpc::graph_file_of(pg, "g" + std::to_string(i))).dump() << "\n";
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << lines.str();
    return nullptr;
  }
  fs::path p(out_path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream(p) << lines.str();
  json out;
  out["written"] = count;
  out["path"] = out_path;
  return out;
}

dpc::GraphFile butterfly_asset() {
  const dpc::Graph g = dpc::butterfly_graph();
  std::vector<std::vector<dpc::Vertex>> faces = {{1, 0, 2}, {1, 2, 3}, {1, 3, 4}, {1, 4, 0},
                                                 {5, 0, 6}, {5, 6, 7}, {5, 7, 8}, {5, 8, 0},
                                                 {0, 4, 3, 2, 0, 8, 7, 6}};
  auto f = dpc::graph_file_of(dpc::PlaneGraph::from_faces(g, faces, faces.back()), "butterfly");
  return f;
}

json cmd_assets(const std::string& dir) {
  std::vector<std::string> written;
  auto put = [&](const std::string& rel, const json& j) {
    dpc::write_json_file(fs::path(dir) / rel, j);
    written.push_back(rel);
  };
  put("butterfly.json", dpc::to_json(butterfly_asset()));
  {
    const dpc::Graph c7 = dpc::cycle_graph(7);
    std::vector<dpc::Vertex> walk = {0, 1, 2, 3, 4, 5, 6};
    std::vector<dpc::Vertex> back(walk.rbegin(), walk.rend());
    put("c7.json", dpc::to_json(dpc::graph_file_of(dpc::PlaneGraph::from_faces(c7, {walk, back}, back), "c7")));
  }
  {
    const dpc::Graph k4 = dpc::complete_graph(4);
    std::vector<std::vector<dpc::Vertex>> faces = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
    put("k4.json", dpc::to_json(dpc::graph_file_of(dpc::PlaneGraph::from_faces(k4, faces, faces[0]), "k4")));
  }
  {
    dpc::GraphFile p;
    p.graph = dpc::petersen_graph();
    p.name = "petersen";
    put("petersen.json", dpc::to_json(p));
  }
  for (const auto& shape : dpc::cluster_catalog()) {
    auto f = dpc::graph_file_of(dpc::shape_embedding(shape), "cluster-" + std::to_string(shape.code));
    f.code = shape.code;
    f.labels = shape.labels;
    std::ostringstream name;
    name << "clusters/" << std::setw(2) << std::setfill('0') << shape.code << ".json";
    put(name.str(), dpc::to_json(f));
  }
  const auto catalog = dpc::config_catalog();
  for (const auto& [label, file] : {std::pair{"CE-6", "ce6.json"}, std::pair{"CE-7", "ce7.json"}}) {
    const auto& c = catalog.at(label);
    auto v = dpc::check_reducible(c);
    if (!v.witness) throw dpc::Error(std::string(label) + " produced no witness");
    put(file, dpc::instance_to_json(*v.witness, c.names, label));
  }
  for (const auto& [label, c] : catalog) put("configs/" + label + ".json", dpc::configuration_to_json(c));
  json out;
  out["directory"] = dir;
  out["written"] = written;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DP-4-coloring verifier: planar structure, cover solver, reducibility and discharging audits"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* w = std::getenv("DPC_WORKERS")) {
    try {
      cfg.workers = std::stoi(w);
    } catch (const std::exception&) {
      std::cerr << "error: DPC_WORKERS is not an integer\n";
      return 2;
    }
  }
  app.add_option("--assets", cfg.assets, "Pattern and catalog directory");
  app.add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  auto* k_opt = app.add_option("--k", cfg.k, "Number of colors (2..8)");
  app.add_flag("--deterministic", cfg.deterministic, "Zero timing fields in reports");

  std::string matching_path, precolor;
  bool random_matching = false, decompose = false;
  auto* solve = app.add_subcommand("solve", "Find an independent transversal of a cover instance");
  solve->add_option("instance", cfg.inputs, "Graph or instance file")->required();
  solve->add_option("--matching", matching_path, "Matching-assignment file");
  solve->add_option("--precolor", precolor, "Fixed colors as v=c,...");
  solve->add_flag("--random-matching", random_matching, "Draw matchings at random (uses --seed)");
  solve->add_option("--seed", cfg.seed, "Random seed");
  solve->add_flag("--decompose", decompose, "Split on separating good triangles");

  auto* detect = app.add_subcommand("detect", "Report 7-cycles, butterflies, clusters and triangles");
  detect->add_option("graph", cfg.inputs, "Graph file")->required();

  std::string lemma, config_path;
  long long count = 10000;
  bool naive = false;
  auto* reduce = app.add_subcommand("reduce-check", "Check a reducible configuration");
  auto* lemma_opt = reduce->add_option("--lemma", lemma, "Built-in configuration (L2, L4, ..., CE-6, CE-7)");
  auto* config_opt = reduce->add_option("--config", config_path, "Configuration file");
  lemma_opt->excludes(config_opt);
  reduce->add_option("--mode", cfg.mode, "full or sampled")->check(CLI::IsMember({"full", "sampled"}));
  reduce->add_option("--seed", cfg.seed, "Seed for sampled mode");
  reduce->add_option("--count", count, "Samples in sampled mode")->check(CLI::PositiveNumber);
  reduce->add_option("--workers", cfg.workers, "Worker threads");
  reduce->add_option("--budget", cfg.budget, "Node budget (0 = unlimited)")->check(CLI::NonNegativeNumber);
  reduce->add_flag("--naive", naive, "Unreduced enumeration: no straightening, full bijections, residual supersets");

  auto* witness = app.add_subcommand("witness-verify", "Exhaustively confirm an instance has no transversal");
  witness->add_option("instance", cfg.inputs, "Instance file")->required();

  std::string action, element, order;
  auto* discharge = app.add_subcommand("discharge", "Discharging audit");
  discharge->add_option("action", action, "audit or explain")->required()->check(CLI::IsMember({"audit", "explain"}));
  discharge->add_option("graph", cfg.inputs, "Embedded graph file")->required();
  discharge->add_option("--element", element, "Account id, e.g. v17, f3, H0, OUTER");
  discharge->add_option("--order", order, "Rule order, comma separated");

  std::vector<std::string> filters;
  int matchings = 1;
  auto* corpus = app.add_subcommand("corpus", "Batch solve and audit with a summary");
  corpus->add_option("path", cfg.inputs, "Directory or multi-record file")->required();
  corpus->add_option("--filter", filters, "no-7-cycles, no-butterfly, has-good-triangle")
      ->check(CLI::IsMember({"no-7-cycles", "no-butterfly", "has-good-triangle"}));
  corpus->add_option("--matchings", matchings, "Random matchings solved per graph")->check(CLI::NonNegativeNumber);
  corpus->add_option("--seed", cfg.seed, "Random seed");

  int gen_count = 10, gen_vertices = 10;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Random plane graphs without 7-cycles or butterflies (NDJSON)");
  generate->add_option("--count", gen_count)->check(CLI::PositiveNumber);
  generate->add_option("--vertices", gen_vertices)->check(CLI::Range(3, 64));
  generate->add_option("--seed", cfg.seed);
  generate->add_option("--out", gen_out, "Output file (default stdout)");

  std::string assets_out;
  auto* assets = app.add_subcommand("assets", "Write the pattern, catalog and gadget assets");
  assets->add_option("--out", assets_out, "Output directory (default: --assets)");

  try {
    app.parse(argc, argv);
    cfg.k_given = k_opt->count() > 0;
    cfg.verb = app.get_subcommands().front()->get_name();
    if (reduce->parsed() && lemma.empty() && config_path.empty())
      throw CLI::RequiredError("reduce-check needs --lemma or --config");
    cfg.validate();
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    json report;
    if (solve->parsed()) report = cmd_solve(cfg, matching_path, precolor, random_matching, decompose);
    else if (detect->parsed()) report = cmd_detect(cfg);
    else if (reduce->parsed()) report = cmd_reduce_check(cfg, lemma, config_path, count, naive);
    else if (witness->parsed()) report = cmd_witness_verify(cfg);
    else if (discharge->parsed()) report = cmd_discharge(cfg, action, element, order);
    else if (corpus->parsed()) report = cmd_corpus(cfg, filters, matchings);
    else if (generate->parsed()) report = cmd_generate(cfg, gen_count, gen_vertices, gen_out);
    else if (assets->parsed()) report = cmd_assets(assets_out.empty() ? cfg.assets : assets_out);
    if (!report.is_null()) emit(cfg, report);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const dpc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
