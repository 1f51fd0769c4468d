#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include <whmm/io.hpp>

using namespace whmm;
using io::json;

namespace {

struct RunConfig {
  std::string graph_path, words_path, out_path;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::size_t max_elements = 1000000;
  long long exp_bound = 0;  // 0 = derive from the word set
  std::size_t inner_bound = 6;
  std::size_t radius = 1;
  int workers = 0;  // 0 = available parallelism; results do not depend on it

  std::string graph_text;
  SimplicialGraph graph{std::vector<std::string>{}, {}};
  std::string input_hash;

  void load() {
    graph_text = io::read_file(graph_path);
    graph = io::parse_graph(graph_text);
    std::string hashed = graph_text;
    if (!words_path.empty()) hashed += io::read_file(words_path);
    input_hash = io::content_hash(hashed);
  }

  WordSet words() const {
    if (words_path.empty()) throw input_error("this command needs --words");
    return io::parse_wordset(graph, io::read_file(words_path));
  }

  long long exponent_bound(const WordSet& w) const {
    return exp_bound > 0 ? exp_bound : default_exponent_bound(w);
  }

  json meta() const {
    json budgets;
    budgets["max_elements"] = max_elements;
    budgets["exp_bound"] = exp_bound;  // 0 = auto
    budgets["inner_bound"] = inner_bound;
    budgets["radius"] = radius;
    json m;
    m["input_hash"] = input_hash;
    m["seed"] = seed;
    m["budgets"] = budgets;
    return m;
  }

  std::string meta_comment() const {
    return "// input_hash=" + input_hash + " seed=" + std::to_string(seed) +
           " max_elements=" + std::to_string(max_elements) +
           " exp_bound=" + std::to_string(exp_bound) +
           " inner_bound=" + std::to_string(inner_bound) +
           " radius=" + std::to_string(radius) + "\n";
  }

  void emit(const std::string& text) const {
    if (out_path.empty() || out_path == "-") {
      std::cout << text;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw input_error("cannot write: " + out_path);
      out << text;
    }
  }

  void emit_json(json j) const {
    j["meta"] = meta();
    emit(j.dump(2) + "\n");
  }
};

json vertex_type_json(const SimplicialGraph& g, const VertexType& V) {
  json parts = json::object();
  for (const BasedPartition& p : V.partitions)
    parts[g.label(p.operative)] = io::petals_json(g, p);
  return parts;
}

BasedPartition finest_partition(const SimplicialGraph& g, int a) {
  return BasedPartition{a, g.star_complement_components(a)};
}

// ---------------------------------------------------------------------------

void cmd_graph_info(const RunConfig& cfg) {
  const SimplicialGraph& g = cfg.graph;
  json vertices = json::array();
  for (int v = 0; v < g.vertex_count(); ++v) {
    json row;
    row["label"] = g.label(v);
    row["link"] = json::array();
    for (int u : bits(g.link(v))) row["link"].push_back(g.label(u));
    row["star_complement_components"] = json::array();
    for (VertexSet c : g.star_complement_components(v)) {
      json comp = json::array();
      for (int u : bits(c)) comp.push_back(g.label(u));
      row["star_complement_components"].push_back(comp);
    }
    vertices.push_back(row);
  }
  json sil = json::array();
  json classes = json::array();
  for (auto [a, b] : g.sil_pairs())
    sil.push_back(json::array({g.label(a), g.label(b)}));
  for (int a = 0; a < g.vertex_count(); ++a)
    for (int b = 0; b < g.vertex_count(); ++b) {
      if (a == b || g.adjacent(a, b)) continue;
      for (VertexSet c : g.star_complement_components(a)) {
        json row;
        row["vertex"] = g.label(a);
        row["relative_to"] = g.label(b);
        row["component"] = json::array();
        for (int u : bits(c)) row["component"].push_back(g.label(u));
        row["class"] = to_string(g.classify_component(a, b, c));
        classes.push_back(row);
      }
    }
  json out;
  out["vertices"] = vertices;
  out["sil_pairs"] = sil;
  out["component_classes"] = classes;

  if (cfg.format == "text") {
    std::string t = cfg.meta_comment();
    for (const auto& row : out["vertices"]) {
      t += row["label"].get<std::string>() + ": link {";
      bool first = true;
      for (const auto& u : row["link"]) {
        if (!first) t += ",";
        t += u.get<std::string>();
        first = false;
      }
      t += "}, " +
           std::to_string(row["star_complement_components"].size()) +
           " star-complement component(s)\n";
    }
    t += "SIL pairs: " +
         (sil.empty() ? std::string("none") : std::to_string(sil.size())) +
         "\n";
    cfg.emit(t);
  } else {
    cfg.emit_json(out);
  }
}

void cmd_whitehead(const RunConfig& cfg) {
  WhiteheadPoset p = enumerate_whitehead_poset(cfg.graph, cfg.max_elements);
  if (cfg.format == "dot") {
    cfg.emit(cfg.meta_comment() + io::poset_to_dot(cfg.graph, p));
  } else {
    json out = io::poset_to_json(cfg.graph, p);
    out["nuclear_index"] = p.nuclear_index;
    cfg.emit_json(out);
  }
}

void cmd_cd(const RunConfig& cfg) {
  CdResult r = cohomological_dimension(cfg.graph, cfg.max_elements);
  if (cfg.format == "text") {
    cfg.emit(cfg.meta_comment() + "cd = " + std::to_string(r.cd) + "\n");
    return;
  }
  json out;
  out["cd"] = r.cd;
  out["witness"] = vertex_type_json(cfg.graph, r.witness);
  out["poset_size"] = r.poset_size;
  cfg.emit_json(out);
}

void cmd_homology(const RunConfig& cfg) {
  WhiteheadPoset p = enumerate_whitehead_poset(cfg.graph, cfg.max_elements);
  json out;
  out["whole"] =
      io::homology_to_json(homology(order_complex(as_poset(p)), true));
  out["punctured"] =
      io::homology_to_json(homology(order_complex(whitehead_zero(p)), true));
  cfg.emit_json(out);
}

void cmd_reductivity(const RunConfig& cfg) {
  const SimplicialGraph& g = cfg.graph;
  WordSet W = cfg.words();
  long long bound = cfg.exponent_bound(W);
  json singles = json::array();
  for (int a = 0; a < g.vertex_count(); ++a)
    for (VertexSet c : g.star_complement_components(a)) {
      PartialConjugation pc = make_partial_conjugation(g, Letter{a, +1}, c);
      if (is_inner(g, SymmetricAutomorphism{{pc}}, cfg.inner_bound).yes())
        continue;
      json row;
      row["conjugator"] = g.label(a);
      row["support"] = io::print_petal(g, pc.support);
      row["red"] = red(g, SymmetricAutomorphism{{pc}}, W);
      singles.push_back(row);
    }
  json partitions = json::array();
  for (int a = 0; a < g.vertex_count(); ++a) {
    BasedPartition p = finest_partition(g, a);
    if (p.trivial()) continue;
    ReductivityResult r = partition_reductivity(g, p, W, bound);
    json row;
    row["vertex"] = g.label(a);
    row["partition"] = io::print_partition(g, p);
    row["reductivity"] = r.value;
    row["bound_limited"] = r.bound_limited;
    partitions.push_back(row);
  }
  auto hit = find_strictly_reductive(g, W);
  json out;
  out["height"] = height(g, SymmetricAutomorphism{}, W);
  out["single_conjugations"] = singles;
  out["finest_partitions"] = partitions;
  out["strictly_reductive"] =
      hit ? json(g.label(hit->conjugator.vertex) + ":" +
                 io::print_petal(g, hit->support))
          : json(nullptr);

  if (cfg.format == "text") {
    std::string t = cfg.meta_comment();
    for (const auto& row : partitions)
      t += row["partition"].get<std::string>() + "  ->  " +
           std::to_string(row["reductivity"].get<long long>()) + "\n";
    t += "strictly reductive: ";
    t += hit ? out["strictly_reductive"].get<std::string>()
             : std::string("none");
    t += "\n";
    cfg.emit(t);
  } else {
    cfg.emit_json(out);
  }
}

void cmd_mm_ball(const RunConfig& cfg) {
  MMBall ball =
      mm_ball(cfg.graph, cfg.radius, cfg.inner_bound,
              cfg.exp_bound > 0 ? cfg.exp_bound : 2);
  if (cfg.format == "dot") {
    cfg.emit(cfg.meta_comment() + io::mmball_to_dot(cfg.graph, ball));
    return;
  }
  json out;
  out["radius"] = ball.radius;
  out["complete"] = ball.complete;
  out["poset_size"] = ball.poset.elements.size();
  out["nuclei"] = json::array();
  for (const auto& n : ball.nuclei)
    out["nuclei"].push_back(io::print_automorphism(cfg.graph, n));
  out["identifications"] = json::array();
  for (const auto& id : ball.identifications) {
    json row;
    row["a"] = id.nucleus_a;
    row["b"] = id.nucleus_b;
    row["vertex_type"] =
        vertex_type_json(cfg.graph, ball.poset.elements[id.vtype_index]);
    row["witness"] = io::print_automorphism(cfg.graph, id.witness);
    out["identifications"].push_back(row);
  }
  cfg.emit_json(out);
}

int cmd_verify(const RunConfig& cfg) {
  const SimplicialGraph& g = cfg.graph;
  json checks = json::array();
  bool all = true;
  auto check = [&](const std::string& name, bool ok) {
    checks.push_back(json{{"name", name}, {"pass", ok}});
    all = all && ok;
  };

  WhiteheadPoset p = enumerate_whitehead_poset(g, cfg.max_elements);
  bool ranks_ok = true, covers_ok = true, stab_ok = true, joins_ok = true;
  for (std::size_t i = 0; i < p.elements.size(); ++i) {
    ranks_ok = ranks_ok && p.ranks[i] == rank(p.elements[i]);
    stab_ok = stab_ok && stabilizer_rank_matrix(g, p.elements[i]) == p.ranks[i];
  }
  for (auto [i, j] : p.covers) {
    covers_ok = covers_ok && p.leq[i][j] && p.ranks[j] == p.ranks[i] + 1;
    joins_ok = joins_ok &&
               join_vtypes(g, {p.elements[i], p.elements[j]}) == p.elements[j];
  }
  check("poset ranks match the petal-count formula", ranks_ok);
  check("covers are comparable with rank difference one", covers_ok);
  check("stabilizer rank: matrix method agrees", stab_ok);
  check("join of a comparable pair is the larger element", joins_ok);

  OrderComplex c = order_complex(as_poset(p));
  auto bnd = boundary_matrices(c);
  bool dd = true;
  for (std::size_t k = 1; k < bnd.size(); ++k) {
    Matrix prod(bnd[k - 1].size(),
                std::vector<BigInt>(bnd[k][0].size(), 0));
    for (std::size_t i = 0; i < prod.size(); ++i)
      for (std::size_t t = 0; t < bnd[k].size(); ++t)
        if (bnd[k - 1][i][t] != 0)
          for (std::size_t j = 0; j < prod[i].size(); ++j)
            prod[i][j] += bnd[k - 1][i][t] * bnd[k][t][j];
    for (const auto& row : prod)
      for (const BigInt& v : row) dd = dd && v == 0;
  }
  check("boundary maps compose to zero", dd);
  check("reduced homology of the realization vanishes",
        homology(c, true).all_zero());

  // counter formulas against direct reductivity, on given or seeded words
  WordSet W;
  if (!cfg.words_path.empty()) {
    W = cfg.words();
  } else {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> pick(0, g.vertex_count() - 1),
        coin(0, 1);
    std::vector<Word> ws;
    for (int i = 0; i < 6; ++i) {
      Word w;
      for (int j = 0; j < 8; ++j) w.push_back({pick(rng), coin(rng) ? 1 : -1});
      ws.push_back(w);
    }
    W = WordSet::from_words(g, ws);
  }
  bool day_ok = true;
  for (int a = 0; a < g.vertex_count(); ++a)
    for (VertexSet comp : g.star_complement_components(a))
      for (int sign : {+1, -1}) {
        PartialConjugation pc =
            make_partial_conjugation(g, Letter{a, sign}, comp);
        long long direct = red(g, pc_power(pc, 1), W);
        day_ok = day_ok && red_via_day_form1(g, pc, W) == direct &&
                 red_via_day_form2(g, pc, W) == direct;
      }
  check("counter formulas agree with direct reductivity", day_ok);

  json out;
  out["checks"] = checks;
  out["all_pass"] = all;
  if (cfg.format == "text") {
    std::string t = cfg.meta_comment();
    for (const auto& row : checks)
      t += std::string(row["pass"].get<bool>() ? "PASS" : "FAIL") + "  " +
           row["name"].get<std::string>() + "\n";
    cfg.emit(t);
  } else {
    cfg.emit_json(out);
  }
  return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whitehead poset, reductivity, and complex computations for "
               "pure symmetric automorphisms of right-angled Artin groups"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string command;
  for (const char* name :
       {"graph-info", "whitehead", "cd", "homology", "reductivity", "mm-ball",
        "verify"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--graph", cfg.graph_path, "graph file (JSON or DOT)")
        ->required();
    sub->add_option("--words", cfg.words_path, "word set file, one per line");
    sub->add_option("--out", cfg.out_path, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "json, dot, or text")
        ->check(CLI::IsMember({"json", "dot", "text"}));
    sub->add_option("--seed", cfg.seed, "seed for sampled checks");
    sub->add_option("--max-elements", cfg.max_elements,
                    "poset enumeration budget");
    sub->add_option("--exp-bound", cfg.exp_bound,
                    "petal exponent bound (0 = derive from words)");
    sub->add_option("--inner-bound", cfg.inner_bound,
                    "inner-recognition search bound");
    sub->add_option("--radius", cfg.radius, "ball radius");
    sub->add_option("--workers", cfg.workers,
                    "worker count (0 = automatic); output-invariant");
    sub->callback([&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    cfg.load();
    if (command == "graph-info") cmd_graph_info(cfg);
    else if (command == "whitehead") cmd_whitehead(cfg);
    else if (command == "cd") cmd_cd(cfg);
    else if (command == "homology") cmd_homology(cfg);
    else if (command == "reductivity") cmd_reductivity(cfg);
    else if (command == "mm-ball") cmd_mm_ball(cfg);
    else if (command == "verify") return cmd_verify(cfg);
  } catch (const budget_error& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 2;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
