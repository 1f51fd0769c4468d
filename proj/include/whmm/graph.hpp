#ifndef WHMM_GRAPH_HPP
#define WHMM_GRAPH_HPP

#include <algorithm>
#include <map>
#include <utility>

#include "base.hpp"

namespace whmm {

enum class ComponentClass { Shared, Dominant, Subordinate };

inline const char* to_string(ComponentClass c) {
  switch (c) {
    case ComponentClass::Shared: return "shared";
    case ComponentClass::Dominant: return "dominant";
    default: return "subordinate";
  }
}

/* The defining graph: immutable, loop-free, undirected. Vertices are dense ids
 * 0..n-1 with unique display labels. */
class SimplicialGraph {
 public:
  SimplicialGraph(std::vector<std::string> labels,
                  const std::vector<std::pair<int, int>>& edges)
      : labels_(std::move(labels)) {
    n_ = static_cast<int>(labels_.size());
    if (n_ > MAX_VERTICES) throw input_error("too many vertices");
    for (int i = 0; i < n_; ++i) {
      if (!index_.emplace(labels_[i], i).second)
        throw input_error("duplicate vertex label: " + labels_[i]);
    }
    adj_.assign(n_, 0);
    for (auto [u, v] : edges) {
      check_vertex(u);
      check_vertex(v);
      if (u == v) throw input_error("loop edge not allowed");
      adj_[u] |= vbit(v);
      adj_[v] |= vbit(u);
    }
  }

  static SimplicialGraph edgeless(int n) { return make(n, {}); }

  // numeric labels "0","1",... unless the caller has real names
  static SimplicialGraph make(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return SimplicialGraph(std::move(labels), edges);
  }

  static SimplicialGraph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return make(n, e);
  }

  int vertex_count() const { return n_; }
  const std::string& label(int v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }

  int vertex_by_label(const std::string& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw input_error("unknown vertex label: " + s);
    return it->second;
  }

  bool adjacent(int u, int v) const { return vin(adj_[u], v); }

  VertexSet link(int v) const {
    check_vertex(v);
    return adj_[v];
  }
  VertexSet star(int v) const {
    check_vertex(v);
    return adj_[v] | vbit(v);
  }
  VertexSet all() const { return n_ == 64 ? ~VertexSet{0} : (vbit(n_) - 1); }

  // Connected components of the induced subgraph on an arbitrary vertex set,
  // sorted by least element.
  std::vector<VertexSet> components_of(VertexSet domain) const {
    std::vector<VertexSet> out;
    VertexSet rest = domain;
    while (rest) {
      int seed = vleast(rest);
      VertexSet comp = vbit(seed), frontier = comp;
      while (frontier) {
        VertexSet next = 0;
        for (int v : bits(frontier)) next |= adj_[v] & domain;
        frontier = next & ~comp;
        comp |= frontier;
      }
      out.push_back(comp);
      rest &= ~comp;
    }
    return out;  // already sorted: seeds taken in increasing order
  }

  std::vector<VertexSet> star_complement_components(int a) const {
    check_vertex(a);
    return components_of(all() & ~star(a));
  }

  /* Classify a component C of the star-complement of a, relative to a vertex b
   * not adjacent to a: also a component away from b (shared), containing b
   * (dominant), or inside b's component holding a (subordinate). */
  ComponentClass classify_component(int a, int b, VertexSet C) const {
    check_vertex(a);
    check_vertex(b);
    if (a == b || adjacent(a, b))
      throw precondition_error("classify_component requires non-adjacent distinct a, b");
    auto comps_a = star_complement_components(a);
    if (std::find(comps_a.begin(), comps_a.end(), C) == comps_a.end())
      throw input_error("C is not a component of the star-complement of a");
    if (vin(C, b)) return ComponentClass::Dominant;
    auto comps_b = star_complement_components(b);
    if (std::find(comps_b.begin(), comps_b.end(), C) != comps_b.end())
      return ComponentClass::Shared;
    // remaining case: C sits inside the component of b's star-complement holding a
    for (VertexSet D : comps_b)
      if (vin(D, a)) {
        if ((C & ~D) != 0)
          throw validity_error("component classification is not total");
        return ComponentClass::Subordinate;
      }
    throw validity_error("component classification is not total");
  }

  // Non-adjacent pairs whose star-complements share a component.
  std::vector<std::pair<int, int>> sil_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b) {
        if (adjacent(a, b)) continue;
        auto ca = star_complement_components(a);
        auto cb = star_complement_components(b);
        bool shared = false;
        for (VertexSet C : ca)
          if (!vin(C, b) &&
              std::find(cb.begin(), cb.end(), C) != cb.end())
            shared = true;
        if (shared) out.emplace_back(a, b);
      }
    return out;
  }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw input_error("unknown vertex id");
  }

  int n_ = 0;
  std::vector<std::string> labels_;
  std::map<std::string, int> index_;
  std::vector<VertexSet> adj_;
};

}  // namespace whmm

#endif
