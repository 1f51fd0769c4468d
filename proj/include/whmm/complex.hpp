#ifndef WHMM_COMPLEX_HPP
#define WHMM_COMPLEX_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <map>

#include "reductivity.hpp"

namespace whmm {

using BigInt = boost::multiprecision::cpp_int;

struct FinitePoset {
  std::size_t n = 0;
  std::vector<std::vector<bool>> leq;  // leq[i][j]: i <= j
};

inline FinitePoset as_poset(const WhiteheadPoset& p) {
  return {p.elements.size(), p.leq};
}

// the poset with the nuclear minimum removed, indices compacted
inline FinitePoset whitehead_zero(const WhiteheadPoset& p) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < p.elements.size(); ++i)
    if (i != p.nuclear_index) keep.push_back(i);
  FinitePoset q;
  q.n = keep.size();
  q.leq.assign(q.n, std::vector<bool>(q.n, false));
  for (std::size_t i = 0; i < q.n; ++i)
    for (std::size_t j = 0; j < q.n; ++j) q.leq[i][j] = p.leq[keep[i]][keep[j]];
  return q;
}

/* All chains of a finite poset, stored by dimension; a k-simplex is a strictly
 * increasing chain of k+1 elements. */
struct OrderComplex {
  std::vector<std::vector<std::vector<std::size_t>>> simplices;  // [dim][idx]
  int dimension() const { return static_cast<int>(simplices.size()) - 1; }
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& s : simplices) d.push_back(s.size());
    return d;
  }
};

inline OrderComplex order_complex(const FinitePoset& p,
                                  std::size_t max_simplices = 1000000) {
  OrderComplex c;
  std::size_t total = 0;
  std::vector<std::vector<std::size_t>> above(p.n);
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = 0; j < p.n; ++j)
      if (i != j && p.leq[i][j]) above[i].push_back(j);
  std::vector<std::size_t> chain;
  auto dfs = [&](auto&& self, std::size_t last) -> void {
    std::size_t d = chain.size() - 1;
    if (c.simplices.size() <= d) c.simplices.resize(d + 1);
    if (++total > max_simplices)
      throw budget_error("order complex simplex budget exceeded", total - 1);
    c.simplices[d].push_back(chain);
    for (std::size_t nxt : above[last]) {
      chain.push_back(nxt);
      self(self, nxt);
      chain.pop_back();
    }
  };
  for (std::size_t i = 0; i < p.n; ++i) {
    chain = {i};
    dfs(dfs, i);
  }
  for (auto& level : c.simplices) std::sort(level.begin(), level.end());
  return c;
}

using Matrix = std::vector<std::vector<BigInt>>;  // row major

/* Boundary matrices of the simplicial chain complex; rows = (k-1)-simplices,
 * columns = k-simplices. Chains are ordered by the poset order, giving a
 * consistent orientation. */
inline std::vector<Matrix> boundary_matrices(const OrderComplex& c) {
  std::vector<Matrix> out;
  int dim = c.dimension();
  for (int k = 1; k <= dim; ++k) {
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t i = 0; i < c.simplices[k - 1].size(); ++i)
      index[c.simplices[k - 1][i]] = i;
    Matrix m(c.simplices[k - 1].size(),
             std::vector<BigInt>(c.simplices[k].size(), 0));
    for (std::size_t j = 0; j < c.simplices[k].size(); ++j) {
      const auto& s = c.simplices[k][j];
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<std::size_t> face;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (i != drop) face.push_back(s[i]);
        m[index.at(face)][j] += (drop % 2 == 0) ? 1 : -1;
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

/* Smith normal form diagonal (non-negative, divisibility-ordered) of a dense
 * integer matrix; naive elimination with exact arithmetic. */
inline std::vector<BigInt> smith_diagonal(Matrix m) {
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<BigInt> diag;
  std::size_t r = 0, c = 0;
  while (r < rows && c < cols) {
    // find a pivot of least non-zero magnitude
    std::size_t pr = r, pc = c;
    BigInt best = 0;
    for (std::size_t i = r; i < rows; ++i)
      for (std::size_t j = c; j < cols; ++j) {
        BigInt v = abs(m[i][j]);
        if (v != 0 && (best == 0 || v < best)) best = v, pr = i, pc = j;
      }
    if (best == 0) break;
    std::swap(m[r], m[pr]);
    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][c], m[i][pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = r + 1; i < rows; ++i)
        if (m[i][c] != 0) {
          BigInt q = m[i][c] / m[r][c];
          for (std::size_t j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
          if (m[i][c] != 0) {
            std::swap(m[r], m[i]);
            clean = false;
          }
        }
      for (std::size_t j = c + 1; j < cols; ++j)
        if (m[r][j] != 0) {
          BigInt q = m[r][j] / m[r][c];
          for (std::size_t i = r; i < rows; ++i) m[i][j] -= q * m[i][c];
          if (m[r][j] != 0) {
            for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][c], m[i][j]);
            clean = false;
          }
        }
      if (clean) {
        // pivot must divide the rest of the block for true SNF
        for (std::size_t i = r + 1; i < rows && clean; ++i)
          for (std::size_t j = c + 1; j < cols && clean; ++j)
            if (m[i][j] % m[r][c] != 0) {
              for (std::size_t jj = c; jj < cols; ++jj) m[r][jj] += m[i][jj];
              clean = false;
            }
      }
    }
    diag.push_back(abs(m[r][c]));
    ++r;
    ++c;
  }
  return diag;
}

/* Sparse front end: boundary matrices are almost entirely unit entries, so
 * peel off +-1 pivots (Markowitz-style, least fill-in first) with unimodular
 * row/column operations, then hand the small remaining core to the dense
 * routine. Each unit pivot contributes a 1 to the diagonal. */
inline std::vector<BigInt> smith_diagonal_sparse(const Matrix& dense) {
  std::size_t rows = dense.size(), cols = rows ? dense[0].size() : 0;
  std::vector<std::map<std::size_t, BigInt>> row(rows);
  std::vector<std::set<std::size_t>> in_col(cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (dense[i][j] != 0) {
        row[i][j] = dense[i][j];
        in_col[j].insert(i);
      }
  std::vector<bool> row_done(rows, false), col_done(cols, false);
  std::size_t units = 0;
  while (true) {
    std::size_t pr = rows, pc = cols, best_cost = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (row_done[i]) continue;
      for (const auto& [j, v] : row[i]) {
        if (v != 1 && v != -1) continue;
        std::size_t cost = (row[i].size() - 1) * (in_col[j].size() - 1);
        if (pr == rows || cost < best_cost) pr = i, pc = j, best_cost = cost;
        if (best_cost == 0) break;
      }
      if (pr != rows && best_cost == 0) break;
    }
    if (pr == rows) break;
    BigInt piv = row[pr][pc];
    std::vector<std::size_t> touched(in_col[pc].begin(), in_col[pc].end());
    for (std::size_t r2 : touched) {
      if (r2 == pr) continue;
      BigInt f = row[r2][pc] / piv;
      for (const auto& [j, v] : row[pr]) {
        auto it = row[r2].find(j);
        if (it == row[r2].end()) {
          row[r2][j] = -f * v;
          in_col[j].insert(r2);
        } else {
          it->second -= f * v;
          if (it->second == 0) {
            row[r2].erase(it);
            in_col[j].erase(r2);
          }
        }
      }
    }
    for (const auto& [j, v] : row[pr]) in_col[j].erase(pr);
    row[pr].clear();
    row_done[pr] = true;
    col_done[pc] = true;
    ++units;
  }
  std::vector<std::size_t> live_cols;
  std::map<std::size_t, std::size_t> col_index;
  for (std::size_t j = 0; j < cols; ++j)
    if (!col_done[j] && !in_col[j].empty()) {
      col_index[j] = live_cols.size();
      live_cols.push_back(j);
    }
  Matrix core;
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_done[i] || row[i].empty()) continue;
    std::vector<BigInt> r(live_cols.size(), 0);
    for (const auto& [j, v] : row[i]) r[col_index.at(j)] = v;
    core.push_back(std::move(r));
  }
  std::vector<BigInt> out(units, 1);
  for (BigInt& d : smith_diagonal(std::move(core))) out.push_back(std::move(d));
  return out;
}

inline std::size_t matrix_rank(const Matrix& m) {
  std::size_t rank = 0;
  for (const BigInt& d : smith_diagonal_sparse(m))
    if (d != 0) ++rank;
  return rank;
}

struct HomologyGroup {
  int dim = 0;
  std::size_t betti = 0;
  std::vector<BigInt> torsion;
};

struct HomologyResult {
  std::vector<std::size_t> dims;  // simplex counts per dimension
  std::vector<HomologyGroup> groups;
  bool reduced = false;
  bool all_zero() const {
    for (const auto& g : groups)
      if (g.betti != 0 || !g.torsion.empty()) return false;
    return true;
  }
};

inline HomologyResult homology(const OrderComplex& c, bool reduced) {
  HomologyResult res;
  res.reduced = reduced;
  res.dims = c.dims();
  int dim = c.dimension();
  if (dim < 0) return res;  // empty complex
  auto bnd = boundary_matrices(c);  // bnd[k-1] is the boundary out of degree k
  std::vector<std::vector<BigInt>> snf(dim);
  std::vector<std::size_t> rk(dim + 1, 0);
  for (int k = 1; k <= dim; ++k) {
    snf[k - 1] = smith_diagonal_sparse(bnd[k - 1]);
    for (const BigInt& d : snf[k - 1])
      if (d != 0) ++rk[k];
  }
  for (int k = 0; k <= dim; ++k) {
    HomologyGroup h;
    h.dim = k;
    std::size_t nk = c.simplices[k].size();
    std::size_t low = (k == 0) ? (reduced && nk > 0 ? 1 : 0) : rk[k];
    h.betti = nk - low - (k < dim ? rk[k + 1] : 0);
    if (k < dim)
      for (const BigInt& d : snf[k])
        if (d > 1) h.torsion.push_back(d);
    res.groups.push_back(std::move(h));
  }
  return res;
}

/* Stabilizer rank by the abelianized-exponent method: one indicator row per
 * petal over coordinates (operative, conjugated vertex), modulo one all-ones
 * row per operative factor (the inner relation). Cross-checked elsewhere
 * against the Sum(l - 1) formula. */
inline std::size_t stabilizer_rank_matrix(const SimplicialGraph& g,
                                          const VertexType& V) {
  int n = g.vertex_count();
  auto row_of = [&](int a, VertexSet s) {
    std::vector<BigInt> r(static_cast<std::size_t>(n) * n, 0);
    for (int b : bits(s)) r[static_cast<std::size_t>(a) * n + b] = 1;
    return r;
  };
  Matrix all, inner;
  for (const BasedPartition& p : V.partitions) {
    if (p.petals.empty()) continue;
    VertexSet whole = 0;
    for (VertexSet petal : p.petals) {
      all.push_back(row_of(p.operative, petal));
      whole |= petal;
    }
    inner.push_back(row_of(p.operative, whole));
    all.push_back(row_of(p.operative, whole));
  }
  if (all.empty()) return 0;
  return matrix_rank(all) - matrix_rank(inner);
}

struct CdResult {
  std::size_t cd = 0;
  VertexType witness;
  std::size_t poset_size = 0;
};

inline CdResult cohomological_dimension(const SimplicialGraph& g,
                                        std::size_t max_elements = 1000000) {
  WhiteheadPoset p = enumerate_whitehead_poset(g, max_elements);
  CdResult r;
  r.poset_size = p.elements.size();
  r.witness = p.elements[p.nuclear_index];
  for (std::size_t i = 0; i < p.elements.size(); ++i)
    if (p.ranks[i] > r.cd) {
      r.cd = p.ranks[i];
      r.witness = p.elements[i];
    }
  return r;
}

/* A bounded ball of the complex: nuclear vertices reached by short products of
 * partial conjugations, one star copy of the Whitehead poset each, glued along
 * witness-certified identifications of marked vertex types. */
struct MMBall {
  struct Identification {
    std::size_t nucleus_a, nucleus_b;
    std::size_t vtype_index;           // index into poset.elements
    SymmetricAutomorphism witness;     // carried automorphism moving basis a to b
  };
  std::vector<SymmetricAutomorphism> nuclei;  // nuclei[0] is the identity
  WhiteheadPoset poset;
  std::vector<Identification> identifications;
  std::size_t radius = 0;
  bool complete = true;  // false iff some tri-state test came back Unknown
};

namespace detail {

inline std::vector<PartialConjugation> ball_generators(const SimplicialGraph& g) {
  std::vector<PartialConjugation> gens;
  for (int a = 0; a < g.vertex_count(); ++a) {
    auto comps = g.star_complement_components(a);
    int m = static_cast<int>(comps.size());
    for (int sign : {+1, -1})
      for (unsigned mask = 1; mask < (1u << m); ++mask) {
        VertexSet A = 0;
        for (int i = 0; i < m; ++i)
          if ((mask >> i) & 1) A |= comps[i];
        gens.push_back(make_partial_conjugation(g, Letter{a, sign}, A));
      }
  }
  return gens;
}

// is delta a petal-exponent product over V's partitions, modulo inner?
inline TriState carried_modulo_inner(const SimplicialGraph& g, const VertexType& V,
                                     const SymmetricAutomorphism& delta,
                                     long long exp_bound, std::size_t inner_bound,
                                     SymmetricAutomorphism* witness) {
  std::vector<PartialConjugation> petals;
  for (const BasedPartition& p : V.partitions)
    if (!p.trivial())
      for (VertexSet petal : p.petals)
        petals.push_back(make_partial_conjugation(g, Letter{p.operative, +1}, petal));
  std::size_t m = petals.size();
  std::vector<long long> k(m, -exp_bound);
  bool any_unknown = false;
  while (true) {
    SymmetricAutomorphism beta;
    for (std::size_t i = 0; i < m; ++i)
      beta = compose(beta, pc_power(petals[i], k[i]));
    TriState t = is_inner(g, compose(inverse(beta), delta), inner_bound);
    if (t.yes()) {
      if (witness) *witness = beta;
      return {TriState::Yes, t.witness};
    }
    if (t.unknown()) any_unknown = true;
    std::size_t i = 0;
    while (i < m && k[i] == exp_bound) k[i++] = -exp_bound;
    if (i == m) break;
    ++k[i];
  }
  return {any_unknown ? TriState::Unknown : TriState::No, {}};
}

}  // namespace detail

inline MMBall mm_ball(const SimplicialGraph& g, std::size_t radius,
                      std::size_t inner_bound = 6, long long exp_bound = 2) {
  MMBall ball;
  ball.radius = radius;
  ball.poset = enumerate_whitehead_poset(g);
  ball.nuclei.push_back(SymmetricAutomorphism{});

  auto gens = detail::ball_generators(g);
  std::vector<SymmetricAutomorphism> frontier = {SymmetricAutomorphism{}};
  for (std::size_t r = 1; r <= radius; ++r) {
    std::vector<SymmetricAutomorphism> next;
    for (const auto& base : frontier)
      for (const auto& pc : gens) {
        SymmetricAutomorphism cand = compose(SymmetricAutomorphism{{pc}}, base);
        bool fresh = true;
        for (const auto& known : ball.nuclei) {
          TriState t = is_inner(g, compose(inverse(known), cand), inner_bound);
          if (t.yes()) {
            fresh = false;
            break;
          }
          if (t.unknown()) ball.complete = false;
        }
        if (fresh) {
          ball.nuclei.push_back(cand);
          next.push_back(cand);
        }
      }
    frontier = std::move(next);
  }

  for (std::size_t i = 0; i < ball.nuclei.size(); ++i)
    for (std::size_t j = i + 1; j < ball.nuclei.size(); ++j) {
      SymmetricAutomorphism delta =
          compose(inverse(ball.nuclei[i]), ball.nuclei[j]);
      for (std::size_t e = 0; e < ball.poset.elements.size(); ++e) {
        if (e == ball.poset.nuclear_index) continue;
        SymmetricAutomorphism wit;
        TriState t = detail::carried_modulo_inner(
            g, ball.poset.elements[e], delta, exp_bound, inner_bound, &wit);
        if (t.yes()) ball.identifications.push_back({i, j, e, wit});
        else if (t.unknown()) ball.complete = false;
      }
    }
  return ball;
}

}  // namespace whmm

#endif
