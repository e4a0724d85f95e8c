#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>

#include "treebraid/homology.hpp"
#include "treebraid/oracle.hpp"
#include "treebraid/verify.hpp"

namespace treebraid::cli {

namespace {

using json = nlohmann::json;

constexpr const char* kSchema = "treebraid/1";

struct JobConfig {
  std::string command;
  std::string tree_path;
  int n = 0;
  int dim = -1;
  std::string oracle;
  std::optional<std::size_t> budget;
  long long mod = 0;
  std::string out_path;
  std::string factors;
  bool reembed = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Budget resolve_budget(const JobConfig& cfg) {
  Budget b;
  if (const char* env = std::getenv("TREEBRAID_BUDGET"); env && *env) {
    try {
      b.cells = std::stoull(env);
    } catch (const std::exception&) {
      throw DomainError("TREEBRAID_BUDGET is not a positive integer");
    }
  }
  if (cfg.budget) b.cells = *cfg.budget;
  if (b.cells < 1) throw DomainError("budget must be at least 1");
  return b;
}

json label_json(const std::string& label) {
  if (!label.empty() && label.size() < 10 &&
      std::all_of(label.begin(), label.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::stoll(label);
  }
  return label;
}

// The tree the computation runs on, with labels for its vertices.
struct Workspace {
  LabeledTree input;
  RootedPlaneTree tree;
  std::vector<std::string> labels;  // per vertex of `tree`; empty for subdivision vertices
  std::map<std::string, Vertex> by_label;
  bool reembedded = false;
  bool subdivided = false;

  json label(Vertex v) const {
    return labels[v].empty() ? json(v) : label_json(labels[v]);
  }
  Vertex vertex(const json& j) const {
    std::string key = j.is_string() ? j.get<std::string>() : j.dump();
    auto it = by_label.find(key);
    if (it == by_label.end()) throw DomainError("unknown vertex label " + key);
    return it->second;
  }
};

Workspace load(const JobConfig& cfg, bool subdivide) {
  Workspace ws;
  ws.input = parse_tree(read_file(cfg.tree_path));
  RootedPlaneTree t = ws.input.tree;
  std::vector<std::string> labels = ws.input.labels;
  if (cfg.reembed) {
    Reembedding re = reembed_binary_core(t);
    std::vector<std::string> moved(labels.size());
    for (Vertex v = 0; v < labels.size(); ++v) moved[re.image[v]] = labels[v];
    ws.reembedded = !(re.tree == t);
    t = std::move(re.tree);
    labels = std::move(moved);
  }
  if (subdivide && !is_n_sufficient(t, cfg.n)) {
    Subdivision sub = subdivide_for(t, cfg.n);
    std::vector<std::string> moved(sub.tree.size());
    for (Vertex v = 0; v < labels.size(); ++v) moved[sub.image[v]] = labels[v];
    t = std::move(sub.tree);
    labels = std::move(moved);
    ws.subdivided = true;
  }
  ws.tree = std::move(t);
  ws.labels = std::move(labels);
  for (Vertex v = 0; v < ws.labels.size(); ++v) {
    if (!ws.labels[v].empty()) ws.by_label[ws.labels[v]] = v;
  }
  return ws;
}

json header(const JobConfig& cfg, const Workspace& ws) {
  json j;
  j["schema"] = kSchema;
  j["n"] = cfg.n;
  j["embedding"] = cfg.reembed ? "binary-core" : "input";
  j["subdivided"] = ws.subdivided;
  j["vertices"] = ws.tree.size();
  return j;
}

json cell_json(const Workspace& ws, const CriticalCell& c) {
  json blocks = json::array();
  for (const auto& b : c.blocks) {
    blocks.push_back({{"x", ws.label(b.x)}, {"p", b.p}, {"q", b.q}});
  }
  return {{"k", c.k}, {"blocks", blocks}};
}

json generator_json(const Workspace& ws, const InteractionVertex& v) {
  return {{"k", v.k}, {"x", ws.label(v.x)}, {"p", v.p}, {"q", v.q}};
}

json element_json(const Workspace& ws, const RingElement& e, long long mod) {
  json arr = json::array();
  const RingElement reduced = e.reduced_mod(mod);
  for (const auto& [c, v] : reduced.terms()) {
    arr.push_back({{"cell", cell_json(ws, c)}, {"coeff", v}});
  }
  return arr;
}

std::vector<int> int_list(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw DomainError(std::string("factor field '") + key + "' must be an array");
  }
  std::vector<int> out;
  for (const auto& v : j[key]) {
    if (!v.is_number_integer()) throw DomainError(std::string("factor field '") + key + "' must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

bool binary_core_embedded(const RootedPlaneTree& t) {
  return is_binary_core(t) && satisfies_binary_core_embedding(t);
}

// Factors are rebased by default exactly when the tree is a binary core in the
// required embedding; an explicit "rebased" field overrides.
std::vector<ChangedGenerator> parse_factors(const Workspace& ws, const JobConfig& cfg) {
  const bool default_rebased = binary_core_embedded(ws.tree);
  std::string text = cfg.factors;
  if (!text.empty() && text[0] == '@') text = read_file(text.substr(1));
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("invalid factor JSON: ") + e.what());
  }
  if (!j.is_array()) throw DomainError("factors must be a JSON array");
  std::vector<ChangedGenerator> out;
  for (const auto& f : j) {
    if (!f.is_object() || !f.contains("k") || !f["k"].is_number_integer() || !f.contains("x")) {
      throw DomainError("each factor needs integer 'k' and a vertex 'x'");
    }
    ChangedGenerator g;
    g.rebased = default_rebased;
    g.v.k = f["k"].get<int>();
    g.v.x = ws.vertex(f["x"]);
    g.v.p = int_list(f, "p");
    g.v.q = int_list(f, "q");
    if (f.contains("rebased")) {
      if (!f["rebased"].is_boolean()) throw DomainError("'rebased' must be a boolean");
      g.rebased = f["rebased"].get<bool>();
    }
    validate(ws.tree, cfg.n, g.v);
    out.push_back(std::move(g));
  }
  return out;
}

// Block-cocycle reading of a product of generators, distributing changed-basis sums.
RingElement blocks_reading(CubicalOracle& oracle, const std::vector<ChangedGenerator>& gens) {
  std::vector<std::vector<std::pair<CriticalCell, Coeff>>> expanded;
  for (const auto& g : gens) {
    RingElement e = expand(g);
    expanded.emplace_back(e.terms().begin(), e.terms().end());
  }
  RingElement out;
  std::vector<InteractionVertex> pick;
  auto rec = [&](auto&& self, std::size_t i, Coeff coeff) -> void {
    if (i == expanded.size()) {
      auto sorted = pick;
      Coeff sign = 1;
      for (std::size_t a = 1; a < sorted.size(); ++a) {
        for (std::size_t b = a; b > 0 && sorted[b - 1].x >= sorted[b].x; --b) {
          if (sorted[b - 1].x == sorted[b].x) return;
          std::swap(sorted[b - 1], sorted[b]);
          sign = -sign;
        }
      }
      out += oracle.blocks(sorted).scaled(checked_mul(sign, coeff));
      return;
    }
    for (const auto& [c, v] : expanded[i]) {
      pick.push_back(as_vertex(c));
      self(self, i + 1, checked_mul(coeff, v));
      pick.pop_back();
    }
  };
  rec(rec, 0, 1);
  return out;
}

int cmd_subdivide(const JobConfig& cfg, json& j) {
  Workspace ws = load(cfg, true);
  j = header(cfg, ws);
  j["tree"] = to_text(ws.tree);
  json image = json::object();
  for (Vertex v = 0; v < ws.labels.size(); ++v) {
    if (!ws.labels[v].empty()) image[ws.labels[v]] = v;
  }
  j["image"] = image;
  return 0;
}

int cmd_critical_cells(const JobConfig& cfg, json& j) {
  Workspace ws = load(cfg, true);
  j = header(cfg, ws);
  const int top = static_cast<int>(ws.tree.essential_vertices().size());
  json cells = json::object();
  json counts = json::object();
  for (int m = 0; m <= top; ++m) {
    if (cfg.dim >= 0 && m != cfg.dim) continue;
    json list = json::array();
    const auto all = enumerate_critical(ws.tree, cfg.n, m);
    resolve_budget(cfg).charge(all.size(), "critical cells");
    for (const auto& c : all) list.push_back(cell_json(ws, c));
    counts[std::to_string(m)] = all.size();
    cells[std::to_string(m)] = std::move(list);
  }
  j["cells"] = cells;
  j["counts"] = counts;
  return 0;
}

int cmd_betti(const JobConfig& cfg, json& j) {
  Workspace ws = load(cfg, true);
  const CohomologyReport rep = integral_cohomology(ws.tree, cfg.n, Model::kUnordered, resolve_budget(cfg));
  j = header(cfg, ws);
  j["betti"] = rep.betti;
  j["cells"] = rep.cells;
  json torsion = json::array();
  for (std::size_t m = 0; m < rep.torsion.size(); ++m) {
    if (!rep.torsion[m].empty()) torsion.push_back({{"degree", m}, {"factors", rep.torsion[m]}});
  }
  j["torsion"] = torsion;
  return 0;
}

int cmd_knt(const JobConfig& cfg, json& j) {
  Workspace ws = load(cfg, true);
  const Budget budget = resolve_budget(cfg);
  j = header(cfg, ws);
  json faces = json::array();
  for (const auto& by_dim : knt_faces(ws.tree, cfg.n, cfg.dim, budget)) {
    json list = json::array();
    for (const auto& face : by_dim) {
      json f = json::array();
      for (const auto& v : face) f.push_back(generator_json(ws, v));
      list.push_back(std::move(f));
    }
    faces.push_back(std::move(list));
  }
  j["faces"] = faces;
  j["f_vector"] = f_vector(ws.tree, cfg.n, budget);
  j["flag"] = is_flag(ws.tree, cfg.n, budget);
  return 0;
}

int cmd_product(const JobConfig& cfg, json& j) {
  Workspace ws = load(cfg, true);
  const auto gens = parse_factors(ws, cfg);
  const Budget budget = resolve_budget(cfg);
  const RingElement formula = evaluate_product(ws.tree, cfg.n, gens);
  j = header(cfg, ws);
  j["binary_core_embedded"] = binary_core_embedded(ws.tree);
  json rebased = json::array();
  for (const auto& g : gens) rebased.push_back(g.rebased && rebasing_applies(g.v));
  j["rebased"] = rebased;
  j["mod"] = cfg.mod;
  j["coefficients"] = element_json(ws, formula, cfg.mod);
  int code = 0;
  if (cfg.oracle != "none") {
    AbramsModel model(ws.tree, cfg.n);
    GradientField field(model, budget);
    CubicalOracle oracle(field);
    json report = json::object();
    auto compare = [&](const char* name, const RingElement& other) {
      const bool agrees = other == formula;
      report[name] = {{"agrees", agrees}, {"coefficients", element_json(ws, other, cfg.mod)}};
      if (!agrees) code = 3;
    };
    if (cfg.oracle == "cubical" || cfg.oracle == "both") compare("cubical", oracle.product(gens));
    if (cfg.oracle == "blocks" || cfg.oracle == "both") compare("blocks", blocks_reading(oracle, gens));
    j["oracle"] = report;
  }
  return code;
}

int cmd_presentation(const JobConfig& cfg, json& j) {
  Workspace ws = load(cfg, true);
  const Presentation p = raag_presentation(ws.tree, cfg.n);
  j = header(cfg, ws);
  json gens = json::array();
  for (const auto& g : p.generators) gens.push_back(generator_json(ws, g));
  json rel = json::array();
  for (const auto& [a, b] : p.commuting) rel.push_back({a, b});
  j["generators"] = gens;
  j["commuting"] = rel;
  return 0;
}

int cmd_embed(const JobConfig& cfg, json& j) {
  JobConfig c = cfg;
  c.reembed = true;
  Workspace ws = load(c, false);
  j["schema"] = kSchema;
  j["changed"] = ws.reembedded;
  j["satisfied"] = satisfies_binary_core_embedding(ws.tree);
  std::ostringstream text;
  text << "root " << ws.labels[0] << '\n';
  json children = json::object();
  for (Vertex v = 0; v < ws.tree.size(); ++v) {
    auto ch = ws.tree.children(v);
    if (ch.empty()) continue;
    json list = json::array();
    text << ws.labels[v] << ':';
    for (Vertex w : ch) {
      list.push_back(ws.label(w));
      text << ' ' << ws.labels[w];
    }
    text << '\n';
    children[ws.labels[v]] = std::move(list);
  }
  j["children"] = children;
  j["tree"] = text.str();
  return 0;
}

int cmd_verify(const JobConfig& cfg, json& j) {
  Workspace ws = load(cfg, true);
  VerifyOptions opt;
  opt.cubical = cfg.oracle == "cubical" || cfg.oracle == "both";
  opt.blocks = cfg.oracle == "blocks" || cfg.oracle == "both";
  opt.budget = resolve_budget(cfg);
  const VerifyReport rep = verify(ws.tree, cfg.n, opt);
  j = header(cfg, ws);
  json checks = json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
  }
  j["checks"] = checks;
  j["passed"] = rep.passed();
  return rep.exit_code();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integral cohomology rings of tree braid groups"};
  app.require_subcommand(1);
  JobConfig cfg;

  struct Spec {
    const char* name;
    const char* help;
    bool needs_n;
    int (*run)(const JobConfig&, json&);
  };
  const std::vector<Spec> specs = {
      {"subdivide", "minimal n-sufficient subdivision", true, cmd_subdivide},
      {"critical-cells", "critical cells in normal form", true, cmd_critical_cells},
      {"betti", "ranks and torsion of H^*(UD_nT)", true, cmd_betti},
      {"knt", "faces of the interaction complex", true, cmd_knt},
      {"product", "cup product of degree-1 generators", true, cmd_product},
      {"presentation", "right-angled Artin presentation", true, cmd_presentation},
      {"embed-binary-core", "re-embed a binary-core tree", false, cmd_embed},
      {"verify", "run the verification suite", true, cmd_verify},
  };
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("tree", cfg.tree_path, ".tree file")->required();
    if (s.needs_n) {
      sub->add_option("--n", cfg.n, "number of strands")->required()->check(CLI::Range(1, kMaxStrands));
    }
    sub->add_option("--budget", cfg.budget, "cell budget")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out_path, "write JSON here instead of stdout");
    if (s.needs_n) {
      sub->add_flag("--reembed", cfg.reembed, "re-embed the binary core first");
    }
    const std::string name = s.name;
    if (name == "critical-cells" || name == "knt") {
      sub->add_option("--dim", cfg.dim, "dimension (knt: largest face dimension)")
          ->check(CLI::NonNegativeNumber);
    }
    if (name == "product") {
      sub->add_option("--factors", cfg.factors, "JSON array of {k,x,p,q,rebased?} or @file")
          ->required();
      sub->add_option("--mod", cfg.mod, "reduce coefficients mod p (0 keeps integers)")
          ->check(CLI::NonNegativeNumber);
    }
    if (name == "product" || name == "verify") {
      cfg.oracle = name == "verify" ? "both" : "none";
      sub->add_option("--oracle", cfg.oracle, "cubical | blocks | both | none")
          ->check(CLI::IsMember({"cubical", "blocks", "both", "none"}));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }
  const CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  if (cfg.command == "product" && chosen->count("--oracle") == 0) cfg.oracle = "none";
  if (cfg.command == "verify" && chosen->count("--oracle") == 0) cfg.oracle = "both";

  json result;
  int code = 0;
  try {
    for (const auto& s : specs) {
      if (cfg.command == s.name) code = s.run(cfg, result);
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << " (estimate " << e.estimate() << " cells)\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  const std::string text = result.dump(2) + "\n";
  if (cfg.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << cfg.out_path << '\n';
      return 1;
    }
    file << text;
  }
  return code;
}

}  // namespace treebraid::cli
