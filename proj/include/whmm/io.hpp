#ifndef WHMM_IO_HPP
#define WHMM_IO_HPP

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "complex.hpp"

namespace whmm {
namespace io {

using nlohmann::json;

// FNV-1a, used to stamp outputs with the input they came from
inline std::string content_hash(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline SimplicialGraph parse_graph_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("bad JSON: ") + e.what(), 1, 1);
  }
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw parse_error("graph JSON needs a \"vertices\" array", 1, 1);
  std::vector<std::string> labels = j["vertices"].get<std::vector<std::string>>();
  std::map<std::string, int> idx;
  for (std::size_t i = 0; i < labels.size(); ++i)
    idx[labels[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.value("edges", json::array())) {
    if (!e.is_array() || e.size() != 2)
      throw parse_error("each edge must be a pair", 1, 1);
    auto u = idx.find(e[0].get<std::string>());
    auto v = idx.find(e[1].get<std::string>());
    if (u == idx.end() || v == idx.end())
      throw parse_error("edge references unknown vertex", 1, 1);
    edges.emplace_back(u->second, v->second);
  }
  return SimplicialGraph(labels, edges);
}

/* DOT subset: `graph name { a; a -- b; }`, undirected, no attributes; vertex
 * ids ordered by first appearance. */
inline SimplicialGraph parse_graph_dot(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  int line = 1;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(cur), cur.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\n') ++line;
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '{' || c == '}' || c == ';') {
      flush();
      tokens.push_back(std::string(1, c));
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      flush();
      tokens.push_back("--");
      ++i;
    } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
      ++line;
    } else {
      cur.push_back(c);
    }
  }
  flush();
  std::size_t t = 0;
  if (t < tokens.size() && (tokens[t] == "graph" || tokens[t] == "strict")) ++t;
  while (t < tokens.size() && tokens[t] != "{") ++t;
  if (t == tokens.size()) throw parse_error("DOT: missing '{'", line, 1);
  ++t;
  std::vector<std::string> labels;
  std::map<std::string, int> idx;
  auto intern = [&](const std::string& name) {
    auto it = idx.find(name);
    if (it != idx.end()) return it->second;
    int id = static_cast<int>(labels.size());
    labels.push_back(name);
    idx[name] = id;
    return id;
  };
  std::vector<std::pair<int, int>> edges;
  while (t < tokens.size() && tokens[t] != "}") {
    if (tokens[t] == ";") {
      ++t;
      continue;
    }
    std::string a = tokens[t++];
    if (a == "{" || a == "--")
      throw parse_error("DOT: unexpected '" + a + "'", line, 1);
    int u = intern(a);
    while (t < tokens.size() && tokens[t] == "--") {
      ++t;
      if (t == tokens.size() || tokens[t] == ";" || tokens[t] == "}")
        throw parse_error("DOT: dangling '--'", line, 1);
      int v = intern(tokens[t++]);
      edges.emplace_back(u, v);
      u = v;
    }
  }
  if (t == tokens.size()) throw parse_error("DOT: missing '}'", line, 1);
  return SimplicialGraph(labels, edges);
}

inline SimplicialGraph parse_graph(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? parse_graph_json(text) : parse_graph_dot(text);
  }
  throw parse_error("empty graph input", 1, 1);
}

// word syntax: whitespace-separated `name` or `name^-1`
inline Word parse_word(const SimplicialGraph& g, const std::string& text) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    int sign = +1;
    auto caret = tok.find('^');
    std::string name = tok;
    if (caret != std::string::npos) {
      std::string exp = tok.substr(caret + 1);
      name = tok.substr(0, caret);
      if (exp == "-1") sign = -1;
      else if (exp != "1") throw parse_error("bad exponent: " + exp, 1, 1);
    }
    w.push_back({g.vertex_by_label(name), sign});
  }
  return w;
}

inline std::string print_word(const SimplicialGraph& g, const Word& w) {
  std::string out;
  for (const Letter& l : w) {
    if (!out.empty()) out += ' ';
    out += g.label(l.vertex);
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

// one word per line, blank lines skipped; entries cyclically reduced
inline WordSet parse_wordset(const SimplicialGraph& g, const std::string& text) {
  std::vector<Word> ws;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (!blank) ws.push_back(parse_word(g, line));
  }
  return WordSet::from_words(g, ws);
}

// fixture literal `a: {b,c}|{d}`
inline BasedPartition parse_partition(const SimplicialGraph& g,
                                      const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw parse_error("partition needs ':'", 1, 1);
  std::string opname = text.substr(0, colon);
  opname.erase(std::remove_if(opname.begin(), opname.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               opname.end());
  int op = g.vertex_by_label(opname);
  std::vector<VertexSet> petals;
  VertexSet petal = 0;
  std::string name;
  bool open = false;
  auto add_name = [&] {
    if (!name.empty()) {
      petal |= vbit(g.vertex_by_label(name));
      name.clear();
    }
  };
  for (std::size_t i = colon + 1; i < text.size(); ++i) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') open = true, petal = 0;
    else if (c == ',') add_name();
    else if (c == '}') {
      add_name();
      petals.push_back(petal);
      open = false;
    } else if (c == '|') {
      if (open) throw parse_error("unbalanced braces in partition", 1, 1);
    } else name.push_back(c);
  }
  return make_partition(g, op, petals);
}

inline std::string print_petal(const SimplicialGraph& g, VertexSet s) {
  std::string out = "{";
  bool first = true;
  for (int v : bits(s)) {
    if (!first) out += ",";
    out += g.label(v);
    first = false;
  }
  return out + "}";
}

inline std::string print_partition(const SimplicialGraph& g,
                                   const BasedPartition& p) {
  std::string out = g.label(p.operative) + ":";
  for (std::size_t i = 0; i < p.petals.size(); ++i) {
    if (i) out += "|";
    else out += " ";
    out += print_petal(g, p.petals[i]);
  }
  return out;
}

inline std::string print_automorphism(const SimplicialGraph& g,
                                      const SymmetricAutomorphism& a) {
  if (a.factors.empty()) return "id";
  std::string out;
  for (const auto& pc : a.factors) {
    if (!out.empty()) out += " ";
    out += g.label(pc.conjugator.vertex);
    if (pc.conjugator.sign < 0) out += "^-1";
    out += ":" + print_petal(g, pc.support);
  }
  return out;
}

inline json graph_to_json(const SimplicialGraph& g) {
  json out;
  out["vertices"] = g.labels();
  out["edges"] = json::array();
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v)
      if (g.adjacent(u, v))
        out["edges"].push_back(json::array({g.label(u), g.label(v)}));
  return out;
}

inline std::string graph_to_dot(const SimplicialGraph& g) {
  std::string out = "graph defining_graph {\n";
  for (int v = 0; v < g.vertex_count(); ++v) out += "  " + g.label(v) + ";\n";
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v = u + 1; v < g.vertex_count(); ++v)
      if (g.adjacent(u, v))
        out += "  " + g.label(u) + " -- " + g.label(v) + ";\n";
  return out + "}\n";
}

inline json petals_json(const SimplicialGraph& g, const BasedPartition& p) {
  json petals = json::array();
  for (VertexSet petal : p.petals) {
    json block = json::array();
    for (int v : bits(petal)) block.push_back(g.label(v));
    petals.push_back(block);
  }
  return petals;
}

inline json poset_to_json(const SimplicialGraph& g, const WhiteheadPoset& p) {
  json out;
  out["elements"] = json::array();
  for (std::size_t i = 0; i < p.elements.size(); ++i) {
    json el;
    el["rank"] = p.ranks[i];
    json parts = json::object();
    for (const BasedPartition& bp : p.elements[i].partitions)
      parts[g.label(bp.operative)] = petals_json(g, bp);
    el["partitions"] = parts;
    out["elements"].push_back(el);
  }
  out["covers"] = json::array();
  for (auto [i, j] : p.covers) out["covers"].push_back(json::array({i, j}));
  return out;
}

inline std::string poset_to_dot(const SimplicialGraph& g, const WhiteheadPoset& p) {
  std::string out = "graph whitehead_poset {\n";
  for (std::size_t i = 0; i < p.elements.size(); ++i) {
    std::string label;
    for (const BasedPartition& bp : p.elements[i].partitions) {
      if (bp.trivial()) continue;
      if (!label.empty()) label += "  ";
      label += print_partition(g, bp);
    }
    if (label.empty()) label = "nuclear";
    out += "  n" + std::to_string(i) + " [label=\"" + label + "\"];\n";
  }
  for (auto [i, j] : p.covers)
    out += "  n" + std::to_string(i) + " -- n" + std::to_string(j) + ";\n";
  return out + "}\n";
}

inline json homology_to_json(const HomologyResult& h) {
  json out;
  out["dims"] = h.dims;
  out["homology"] = json::array();
  for (const auto& grp : h.groups) {
    json row;
    row["dim"] = grp.dim;
    row["betti"] = grp.betti;
    row["torsion"] = json::array();
    for (const BigInt& t : grp.torsion) row["torsion"].push_back(t.str());
    out["homology"].push_back(row);
  }
  return out;
}

inline std::string mmball_to_dot(const SimplicialGraph& g, const MMBall& ball) {
  std::string out = "graph mm_ball {\n";
  for (std::size_t i = 0; i < ball.nuclei.size(); ++i)
    out += "  nucleus" + std::to_string(i) + " [label=\"" +
           print_automorphism(g, ball.nuclei[i]) + "\"];\n";
  for (const auto& id : ball.identifications) {
    std::string vt;
    for (const BasedPartition& bp :
         ball.poset.elements[id.vtype_index].partitions) {
      if (bp.trivial()) continue;
      if (!vt.empty()) vt += "  ";
      vt += print_partition(g, bp);
    }
    out += "  nucleus" + std::to_string(id.nucleus_a) + " -- nucleus" +
           std::to_string(id.nucleus_b) + " [label=\"" + vt + " via " +
           print_automorphism(g, id.witness) + "\"];\n";
  }
  out += "  complete=" + std::string(ball.complete ? "true" : "false") + ";\n";
  return out + "}\n";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace io
}  // namespace whmm

#endif
