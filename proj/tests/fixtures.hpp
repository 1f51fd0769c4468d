#ifndef WHMM_TEST_FIXTURES_HPP
#define WHMM_TEST_FIXTURES_HPP

#include <cstdint>
#include <random>

#include <whmm/graph.hpp>

namespace fixtures {

// path a - c - b with an isolated d
inline whmm::SimplicialGraph path_plus_d() {
  return whmm::SimplicialGraph({"a", "c", "b", "d"}, {{0, 1}, {1, 2}});
}

// the 11-vertex graph used in the worked refinement/disjunction examples
inline whmm::SimplicialGraph eleven_vertex() {
  std::vector<std::string> labels;
  for (int i = 1; i <= 11; ++i) labels.push_back(std::to_string(i));
  auto id = [](int label) { return label - 1; };
  std::vector<std::pair<int, int>> edges = {
      {id(3), id(2)}, {id(3), id(10)}, {id(3), id(8)}, {id(5), id(6)},
      {id(5), id(10)}, {id(5), id(8)}, {id(9), id(8)}, {id(6), id(7)},
      {id(11), id(10)}, {id(2), id(1)}};
  return whmm::SimplicialGraph(labels, edges);
}

// all graphs on n labeled vertices, visited via an edge-subset callback
template <typename F>
inline void for_all_graphs(int n, F&& f) {
  std::vector<std::pair<int, int>> all_edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) all_edges.emplace_back(i, j);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all_edges.size());
       ++mask) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t e = 0; e < all_edges.size(); ++e)
      if ((mask >> e) & 1) edges.push_back(all_edges[e]);
    f(whmm::SimplicialGraph::make(n, edges));
  }
}

inline whmm::SimplicialGraph random_graph(int n, std::mt19937_64& rng,
                                          double p = 0.4) {
  std::vector<std::pair<int, int>> edges;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) < p) edges.emplace_back(i, j);
  return whmm::SimplicialGraph::make(n, edges);
}

}  // namespace fixtures

#endif
