#include <catch2/catch_amalgamated.hpp>
#include <whmm/graph.hpp>

#include "fixtures.hpp"

using namespace whmm;

TEST_CASE("link and star") {
  auto edgeless = SimplicialGraph::edgeless(3);
  REQUIRE(edgeless.link(0) == 0);
  REQUIRE(edgeless.star(0) == vbit(0));

  auto path = SimplicialGraph::make(3, {{0, 1}, {1, 2}});
  REQUIRE(path.link(1) == (vbit(0) | vbit(2)));
  REQUIRE(path.star(1) == (vbit(0) | vbit(1) | vbit(2)));

  auto k4 = SimplicialGraph::complete(4);
  REQUIRE(k4.star(2) == k4.all());

  auto g = fixtures::eleven_vertex();
  // neighbors of vertex "3" are "2", "8", "10"
  int v3 = g.vertex_by_label("3");
  VertexSet expect = vbit(g.vertex_by_label("2")) | vbit(g.vertex_by_label("8")) |
                     vbit(g.vertex_by_label("10"));
  REQUIRE(g.link(v3) == expect);

  REQUIRE_THROWS_AS(path.link(7), input_error);
}

TEST_CASE("star complement components") {
  auto edgeless = SimplicialGraph::edgeless(4);
  auto comps = edgeless.star_complement_components(0);
  REQUIRE(comps == std::vector<VertexSet>{vbit(1), vbit(2), vbit(3)});

  auto g = fixtures::path_plus_d();  // a-c-b plus d; ids a=0 c=1 b=2 d=3
  comps = g.star_complement_components(0);
  REQUIRE(comps == std::vector<VertexSet>{vbit(2), vbit(3)});

  REQUIRE(SimplicialGraph::complete(3).star_complement_components(1).empty());
}

TEST_CASE("component classification") {
  auto g = fixtures::path_plus_d();
  REQUIRE(g.classify_component(0, 2, vbit(3)) == ComponentClass::Shared);
  REQUIRE(g.classify_component(0, 2, vbit(2)) == ComponentClass::Dominant);

  // two disjoint edges plus an isolated vertex
  auto h = SimplicialGraph::make(5, {{0, 1}, {2, 3}});
  REQUIRE(h.classify_component(0, 3, vbit(2) | vbit(3)) ==
          ComponentClass::Dominant);
  REQUIRE(h.classify_component(0, 3, vbit(4)) == ComponentClass::Shared);

  // star at 1 over {2,3} with 0 isolated: {2} is a component away from 3 but
  // melts into the single component {1,2,3} away from 0
  auto s = SimplicialGraph::make(4, {{1, 2}, {1, 3}});
  REQUIRE(s.classify_component(3, 0, vbit(2)) == ComponentClass::Subordinate);

  REQUIRE_THROWS_AS(g.classify_component(0, 1, vbit(2)), precondition_error);
  REQUIRE_THROWS_AS(g.classify_component(0, 2, vbit(2) | vbit(3)), input_error);
}

TEST_CASE("classification totality and star disjointness, all small graphs") {
  for (int n = 2; n <= 5; ++n) {
    fixtures::for_all_graphs(n, [&](const SimplicialGraph& g) {
      for (int a = 0; a < n; ++a) {
        auto comps = g.star_complement_components(a);
        VertexSet uni = 0;
        for (VertexSet c : comps) {
          REQUIRE((uni & c) == 0);
          uni |= c;
        }
        REQUIRE(uni == (g.all() & ~g.star(a)));
        for (int b = 0; b < n; ++b) {
          if (a == b || g.adjacent(a, b)) continue;
          for (VertexSet c : comps) {
            auto cls = g.classify_component(a, b, c);  // totality: no throw
            if (cls != ComponentClass::Dominant)
              REQUIRE((c & g.star(b)) == 0);
          }
        }
      }
    });
  }
}

TEST_CASE("sil pairs") {
  REQUIRE(SimplicialGraph::complete(3).sil_pairs().empty());
  auto e4 = SimplicialGraph::edgeless(4);
  REQUIRE(e4.sil_pairs().size() == 6);  // every pair shares a singleton
}
