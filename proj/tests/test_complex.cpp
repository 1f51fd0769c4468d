#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <whmm/complex.hpp>

#include "fixtures.hpp"

using namespace whmm;

namespace {

Matrix multiply(const Matrix& a, const Matrix& b) {
  std::size_t n = a.size(), k = a.empty() ? 0 : a[0].size(), m = b.empty() ? 0 : b[0].size();
  Matrix out(n, std::vector<BigInt>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t)
      if (a[i][t] != 0)
        for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
  return out;
}

bool is_zero(const Matrix& m) {
  for (const auto& row : m)
    for (const BigInt& v : row)
      if (v != 0) return false;
  return true;
}

BigInt minor_det(const Matrix& m, const std::vector<std::size_t>& rows,
                 const std::vector<std::size_t>& cols) {
  std::size_t k = rows.size();
  if (k == 0) return 1;
  BigInt det = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::size_t> sub(rows);
    sub.erase(sub.begin() + i);
    BigInt term = m[rows[i]][cols[0]] *
                  minor_det(m, sub, {cols.begin() + 1, cols.end()});
    det += (i % 2 == 0) ? term : -term;
  }
  return det;
}

// gcd of all k x k minors; zero when every minor vanishes
BigInt determinantal_divisor(const Matrix& m, std::size_t k) {
  std::size_t rows = m.size(), cols = m[0].size();
  BigInt g = 0;
  std::vector<std::size_t> rsel(k), csel(k);
  auto choose = [&](auto&& self, std::vector<std::size_t>& sel, std::size_t limit,
                    std::size_t start, auto&& leaf) -> void {
    if (sel.size() == k) return leaf();
    for (std::size_t i = start; i < limit; ++i) {
      sel.push_back(i);
      self(self, sel, limit, i + 1, leaf);
      sel.pop_back();
    }
  };
  rsel.clear();
  choose(choose, rsel, rows, 0, [&] {
    csel.clear();
    choose(choose, csel, cols, 0,
           [&] { g = gcd(g, abs(minor_det(m, rsel, csel))); });
  });
  return g;
}

void check_euler(const HomologyResult& h) {
  long long chi_simplices = 0, chi_betti = 0;
  for (std::size_t k = 0; k < h.dims.size(); ++k) {
    long long sign = (k % 2 == 0) ? 1 : -1;
    chi_simplices += sign * static_cast<long long>(h.dims[k]);
    chi_betti += sign * static_cast<long long>(h.groups[k].betti);
  }
  REQUIRE(chi_simplices == chi_betti);
}

}  // namespace

TEST_CASE("order complex of small posets") {
  FinitePoset one{1, {{true}}};
  OrderComplex c1 = order_complex(one);
  REQUIRE(c1.dims() == std::vector<std::size_t>{1});
  REQUIRE(c1.dimension() == 0);

  SimplicialGraph g3 = SimplicialGraph::edgeless(3);
  WhiteheadPoset p3 = enumerate_whitehead_poset(g3);
  REQUIRE(p3.elements.size() == 4);
  OrderComplex c3 = order_complex(as_poset(p3));
  REQUIRE(c3.dims() == std::vector<std::size_t>{4, 3});  // the 3-edge star

  SimplicialGraph g4 = SimplicialGraph::edgeless(4);
  WhiteheadPoset p4 = enumerate_whitehead_poset(g4);
  OrderComplex c4 = order_complex(as_poset(p4));
  REQUIRE(c4.dimension() == 2);

  REQUIRE_THROWS_AS(order_complex(as_poset(p4), 10), budget_error);
}

TEST_CASE("whitehead zero drops the minimum") {
  for (int n : {2, 3, 4}) {
    WhiteheadPoset p =
        enumerate_whitehead_poset(SimplicialGraph::complete(n));
    REQUIRE(whitehead_zero(p).n == 0);
  }
  WhiteheadPoset p3 = enumerate_whitehead_poset(SimplicialGraph::edgeless(3));
  FinitePoset z3 = whitehead_zero(p3);
  REQUIRE(z3.n == p3.elements.size() - 1);
  for (std::size_t i = 0; i < z3.n; ++i)
    for (std::size_t j = 0; j < z3.n; ++j)
      REQUIRE(z3.leq[i][j] == (i == j));  // a 3-element antichain
}

TEST_CASE("boundary maps compose to zero") {
  fixtures::for_all_graphs(3, [&](const SimplicialGraph& g) {
    auto bnd = boundary_matrices(
        order_complex(as_poset(enumerate_whitehead_poset(g))));
    for (std::size_t k = 1; k < bnd.size(); ++k)
      REQUIRE(is_zero(multiply(bnd[k - 1], bnd[k])));
  });
  auto bnd = boundary_matrices(order_complex(
      as_poset(enumerate_whitehead_poset(SimplicialGraph::edgeless(4)))));
  REQUIRE(bnd.size() == 2);
  REQUIRE(is_zero(multiply(bnd[0], bnd[1])));
}

TEST_CASE("homology of hand-built complexes") {
  // two minimal and two maximal elements, all mixed pairs comparable: a 4-cycle
  FinitePoset circle{4, {{true, false, true, true},
                         {false, true, true, true},
                         {false, false, true, false},
                         {false, false, false, true}}};
  HomologyResult h = homology(order_complex(circle), false);
  REQUIRE(h.groups[0].betti == 1);
  REQUIRE(h.groups[1].betti == 1);
  REQUIRE(h.groups[1].torsion.empty());
  check_euler(h);

  FinitePoset two_points{2, {{true, false}, {false, true}}};
  HomologyResult h2 = homology(order_complex(two_points), true);
  REQUIRE(h2.groups[0].betti == 1);

  OrderComplex empty;
  REQUIRE(homology(empty, true).groups.empty());
}

TEST_CASE("torsion: a 6-vertex projective plane") {
  OrderComplex c;
  c.simplices.resize(3);
  for (std::size_t v = 0; v < 6; ++v) c.simplices[0].push_back({v});
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) c.simplices[1].push_back({i, j});
  for (auto t : std::vector<std::vector<std::size_t>>{
           {0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 1, 5}, {0, 4, 5},
           {1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5}}) {
    c.simplices[2].push_back(t);
  }
  std::sort(c.simplices[2].begin(), c.simplices[2].end());

  // closed surface: every edge lies in exactly two triangles
  for (const auto& e : c.simplices[1]) {
    int inc = 0;
    for (const auto& t : c.simplices[2])
      if (std::includes(t.begin(), t.end(), e.begin(), e.end())) ++inc;
    REQUIRE(inc == 2);
  }

  auto bnd = boundary_matrices(c);
  REQUIRE(is_zero(multiply(bnd[0], bnd[1])));
  HomologyResult h = homology(c, false);
  REQUIRE(h.groups[0].betti == 1);
  REQUIRE(h.groups[1].betti == 0);
  REQUIRE(h.groups[1].torsion == std::vector<BigInt>{2});
  REQUIRE(h.groups[2].betti == 0);
  check_euler(h);
}

TEST_CASE("smith normal form against determinantal divisors") {
  REQUIRE(smith_diagonal({{BigInt(2)}}) == std::vector<BigInt>{2});
  REQUIRE(smith_diagonal({{BigInt(0)}}).empty());
  REQUIRE(smith_diagonal({{BigInt(2), 0}, {0, BigInt(3)}}) ==
          std::vector<BigInt>({1, 6}));

  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t rows = 2 + trial % 2, cols = 2 + (trial / 2) % 3;
    Matrix m(rows, std::vector<BigInt>(cols));
    for (auto& row : m)
      for (auto& v : row) v = entry(rng);
    std::vector<BigInt> d = smith_diagonal(m);
    REQUIRE(smith_diagonal_sparse(m) == d);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      REQUIRE(d[i] > 0);
      REQUIRE(d[i + 1] % d[i] == 0);
    }
    BigInt prod = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
      if (k <= d.size()) prod *= d[k - 1];
      REQUIRE(determinantal_divisor(m, k) == (k <= d.size() ? prod : 0));
    }
  }
}

TEST_CASE("whitehead complex is a cone") {
  fixtures::for_all_graphs(3, [&](const SimplicialGraph& g) {
    HomologyResult h = homology(
        order_complex(as_poset(enumerate_whitehead_poset(g))), true);
    REQUIRE(h.all_zero());
    check_euler(homology(
        order_complex(as_poset(enumerate_whitehead_poset(g))), false));
  });
  for (auto g : {SimplicialGraph::edgeless(4),
                 SimplicialGraph::make(4, {{0, 1}}),
                 SimplicialGraph::make(4, {{0, 1}, {2, 3}})}) {
    REQUIRE(homology(order_complex(as_poset(enumerate_whitehead_poset(g))),
                     true)
                .all_zero());
  }
}

TEST_CASE("punctured complex of the free group on three letters") {
  WhiteheadPoset p = enumerate_whitehead_poset(SimplicialGraph::edgeless(3));
  OrderComplex c = order_complex(whitehead_zero(p));
  REQUIRE(c.dims() == std::vector<std::size_t>{3});
  HomologyResult h = homology(c, true);
  REQUIRE(h.groups[0].betti == 2);
  REQUIRE(h.groups[0].torsion.empty());
}

TEST_CASE("stabilizer rank matrix method matches the length formula") {
  for (int n : {3, 4}) {
    fixtures::for_all_graphs(n, [&](const SimplicialGraph& g) {
      WhiteheadPoset p = enumerate_whitehead_poset(g);
      for (std::size_t i = 0; i < p.elements.size(); ++i) {
        REQUIRE(stabilizer_rank_matrix(g, p.elements[i]) == p.ranks[i]);
        REQUIRE(p.ranks[i] == rank(p.elements[i]));
      }
    });
  }
}

TEST_CASE("cohomological dimension") {
  for (int n : {2, 3, 4}) {
    CdResult r = cohomological_dimension(SimplicialGraph::complete(n));
    REQUIRE(r.cd == 0);
    REQUIRE(r.poset_size == 1);
  }
  for (int n : {3, 4, 5}) {
    CdResult r = cohomological_dimension(SimplicialGraph::edgeless(n));
    REQUIRE(r.cd == static_cast<std::size_t>(n - 2));
    REQUIRE(rank(r.witness) == r.cd);
  }

  // dual-method agreement on an edge plus two isolated vertices
  SimplicialGraph g = SimplicialGraph::make(4, {{0, 1}});
  CdResult r = cohomological_dimension(g);
  WhiteheadPoset p = enumerate_whitehead_poset(g);
  std::size_t best = 0;
  for (const VertexType& V : p.elements)
    best = std::max(best, stabilizer_rank_matrix(g, V));
  REQUIRE(r.cd == best);

  REQUIRE_THROWS_AS(cohomological_dimension(SimplicialGraph::edgeless(4), 5),
                    budget_error);
}

TEST_CASE("bounded balls: degenerate cases") {
  MMBall b = mm_ball(SimplicialGraph::complete(3), 2);
  REQUIRE(b.nuclei.size() == 1);
  REQUIRE(b.poset.elements.size() == 1);
  REQUIRE(b.identifications.empty());
  REQUIRE(b.complete);

  MMBall b0 = mm_ball(SimplicialGraph::edgeless(3), 0);
  REQUIRE(b0.nuclei.size() == 1);
  REQUIRE(b0.identifications.empty());
  REQUIRE(b0.poset.elements.size() == 4);  // one star copy of the whole poset
}

TEST_CASE("bounded ball of the free group on three letters") {
  SimplicialGraph g = SimplicialGraph::edgeless(3);
  MMBall b = mm_ball(g, 1);
  // per vertex the four proper single-petal conjugations collapse in pairs:
  // the full conjugation is inner, so C^a_b and (C^a_c)^{-1} agree
  REQUIRE(b.nuclei.size() == 7);
  REQUIRE(b.complete);

  // every identification is certified: the witness is carried and matches
  REQUIRE(!b.identifications.empty());
  for (const auto& id : b.identifications) {
    REQUIRE(id.vtype_index != b.poset.nuclear_index);
    SymmetricAutomorphism delta =
        compose(inverse(b.nuclei[id.nucleus_a]), b.nuclei[id.nucleus_b]);
    REQUIRE(is_inner(g, compose(inverse(id.witness), delta), 6).yes());
  }

  // the star at C^0_{1} meets the star at the identity in the type split at 0
  PartialConjugation pc = make_partial_conjugation(g, Letter{0, +1}, vbit(1));
  std::size_t j = 0;
  for (std::size_t i = 1; i < b.nuclei.size(); ++i)
    if (is_inner(g, compose(inverse(b.nuclei[i]),
                            SymmetricAutomorphism{{pc}}),
                 6)
            .yes())
      j = i;
  REQUIRE(j != 0);
  VertexType split = nuclear_vertex(g);
  split.partitions[0] = make_partition(g, 0, {vbit(1), vbit(2)});
  bool found = false;
  for (const auto& id : b.identifications)
    if (id.nucleus_a == 0 && id.nucleus_b == j &&
        b.poset.elements[id.vtype_index] == split)
      found = true;
  REQUIRE(found);

  // no identification at a type whose only split is at a different vertex
  // unless the connecting automorphism is carried there; the pair (id, C^0_1)
  // is not carried by the type split only at vertex 1
  VertexType other = nuclear_vertex(g);
  other.partitions[1] = make_partition(g, 1, {vbit(0), vbit(2)});
  for (const auto& id : b.identifications)
    if (id.nucleus_a == 0 && id.nucleus_b == j)
      REQUIRE(b.poset.elements[id.vtype_index] != other);
}

TEST_CASE("chain stabilizers live in the minimal vertex") {
  // generators carried by the smaller element of a cover are carried by the
  // larger one: its petals refine the smaller element's petals exactly
  for (auto g : {SimplicialGraph::edgeless(3), fixtures::path_plus_d()}) {
    WhiteheadPoset p = enumerate_whitehead_poset(g);
    for (auto [lo, hi] : p.covers) {
      for (const BasedPartition& part : p.elements[lo].partitions) {
        if (part.trivial()) continue;
        for (VertexSet petal : part.petals) {
          SymmetricAutomorphism delta{{make_partial_conjugation(
              g, Letter{part.operative, +1}, petal)}};
          TriState t = detail::carried_modulo_inner(g, p.elements[hi], delta,
                                                    1, 4, nullptr);
          REQUIRE(t.yes());
        }
      }
    }
  }
}
