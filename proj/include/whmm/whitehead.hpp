#ifndef WHMM_WHITEHEAD_HPP
#define WHMM_WHITEHEAD_HPP

#include <algorithm>
#include <numeric>
#include <optional>

#include "words.hpp"

namespace whmm {

/* A valid based partition with operative factor a: petals partition the
 * star-complement of a, each petal a union of its components. Petals are kept
 * sorted by least element; the zero-petal partition (complete-graph side) is
 * admitted with length 0. */
struct BasedPartition {
  int operative = -1;
  std::vector<VertexSet> petals;
  std::size_t length() const { return petals.size(); }
  bool trivial() const { return petals.size() <= 1; }
  bool operator==(const BasedPartition& o) const {
    return operative == o.operative && petals == o.petals;
  }
  bool operator!=(const BasedPartition& o) const { return !(*this == o); }
  bool operator<(const BasedPartition& o) const {
    if (operative != o.operative) return operative < o.operative;
    return petals < o.petals;
  }
};

inline void sort_petals(BasedPartition& p) {
  std::sort(p.petals.begin(), p.petals.end(),
            [](VertexSet a, VertexSet b) { return vleast(a) < vleast(b); });
}

inline bool is_valid_partition(const SimplicialGraph& g, const BasedPartition& p) {
  VertexSet domain = g.all() & ~g.star(p.operative);
  VertexSet seen = 0;
  for (VertexSet petal : p.petals) {
    if (petal == 0 || (petal & seen) || (petal & ~domain)) return false;
    seen |= petal;
  }
  if (seen != domain) return false;
  for (VertexSet C : g.star_complement_components(p.operative)) {
    bool split = false;
    for (VertexSet petal : p.petals)
      if ((C & petal) && (C & ~petal)) split = true;
    if (split) return false;
  }
  return true;
}

inline BasedPartition make_partition(const SimplicialGraph& g, int a,
                                     std::vector<VertexSet> petals) {
  BasedPartition p{a, std::move(petals)};
  sort_petals(p);
  if (!is_valid_partition(g, p)) throw validity_error("partition is not valid");
  return p;
}

inline BasedPartition trivial_partition(const SimplicialGraph& g, int a) {
  VertexSet domain = g.all() & ~g.star(a);
  BasedPartition p{a, {}};
  if (domain) p.petals.push_back(domain);
  return p;
}

// the petal containing b; defined when b avoids the star of the operative
inline VertexSet dominant_petal(const SimplicialGraph& g, const BasedPartition& p,
                                int b) {
  if (vin(g.star(p.operative), b))
    throw precondition_error("dominant petal undefined: b in star of operative");
  for (VertexSet petal : p.petals)
    if (vin(petal, b)) return petal;
  throw precondition_error("dominant petal undefined");
}

inline std::size_t crossings(const SimplicialGraph& g, const BasedPartition& A,
                             const BasedPartition& B) {
  int a = A.operative, b = B.operative;
  if (a == b) throw precondition_error("crossings requires distinct operatives");
  if (vin(g.star(b), a)) return 0;
  std::size_t count = 0;
  for (VertexSet P : A.petals) {
    if (vin(P, b)) continue;
    for (VertexSet Q : B.petals)
      if (!vin(Q, a) && (P & Q)) ++count;
  }
  return count;
}

inline bool compatible(const SimplicialGraph& g, const BasedPartition& A,
                       const BasedPartition& B) {
  if (A.operative == B.operative) return true;  // a is in its own star
  if (vin(g.star(B.operative), A.operative)) return true;
  return crossings(g, A, B) == 0;
}

/* Structural characterization of compatibility for non-adjacent operatives:
 * every petal of A away from b is made of shared or subordinate components,
 * so it avoids st(b) and must land inside the petal of B containing a. */
inline bool compatible_structural(const SimplicialGraph& g, const BasedPartition& A,
                                  const BasedPartition& B) {
  int a = A.operative, b = B.operative;
  if (a == b || vin(g.star(b), a)) return true;
  VertexSet DaB = dominant_petal(g, B, a);  // petal of B containing a
  VertexSet DbA = dominant_petal(g, A, b);
  for (VertexSet P : A.petals)
    if (P != DbA && (P & ~DaB)) return false;
  for (VertexSet Q : B.petals)
    if (Q != DaB && (Q & ~DbA)) return false;
  return true;
}

// A <= B: every petal of B fits inside a petal of A (same operative)
inline bool partition_leq(const BasedPartition& A, const BasedPartition& B) {
  if (A.operative != B.operative)
    throw precondition_error("partition_leq requires equal operatives");
  for (VertexSet Q : B.petals) {
    bool inside = false;
    for (VertexSet P : A.petals)
      if ((Q & ~P) == 0) inside = true;
    if (!inside) return false;
  }
  return true;
}

inline BasedPartition join_partitions(const SimplicialGraph& g,
                                      const BasedPartition& A,
                                      const BasedPartition& B) {
  if (A.operative != B.operative)
    throw precondition_error("join requires equal operatives");
  BasedPartition r{A.operative, {}};
  for (VertexSet P : A.petals)
    for (VertexSet Q : B.petals)
      if (P & Q) r.petals.push_back(P & Q);
  sort_petals(r);
  if (!is_valid_partition(g, r)) throw validity_error("join is not valid");
  return r;
}

/* Refinement of A along S: keep the petal holding S's operative, split every
 * other petal by the crossing petals of S, leftover elements of each split
 * petal forming one residue petal. */
inline BasedPartition refine(const SimplicialGraph& g, const BasedPartition& A,
                             const BasedPartition& S) {
  if (compatible(g, A, S)) return A;
  int a = A.operative, c = S.operative;
  VertexSet DcA = dominant_petal(g, A, c);
  BasedPartition r{a, {}};
  for (VertexSet P : A.petals) {
    if (P == DcA) {
      r.petals.push_back(P);
      continue;
    }
    VertexSet residue = P;
    for (VertexSet Q : S.petals) {
      if (vin(Q, a)) continue;
      if (P & Q) {
        r.petals.push_back(P & Q);
        residue &= ~Q;
      }
    }
    if (residue) r.petals.push_back(residue);
  }
  sort_petals(r);
  return r;
}

/* Disjunction: refine first, then merge the crossing pieces of the refinement
 * into the dominant petal towards S; residues stay separate. */
inline BasedPartition disjoin(const SimplicialGraph& g, const BasedPartition& A,
                              const BasedPartition& S) {
  if (compatible(g, A, S)) return A;
  BasedPartition fine = refine(g, A, S);
  int a = A.operative;
  VertexSet DcA = dominant_petal(g, A, S.operative);
  BasedPartition r{a, {}};
  VertexSet merged = DcA;
  for (VertexSet P : fine.petals) {
    if (P == DcA) continue;
    bool crosses = false;
    for (VertexSet Q : S.petals)
      if (!vin(Q, a) && !vin(P, S.operative) && (P & Q)) crosses = true;
    if (crosses) merged |= P;
    else r.petals.push_back(P);
  }
  r.petals.push_back(merged);
  sort_petals(r);
  return r;
}

// all valid partitions at a: set partitions of the component list
inline std::vector<BasedPartition> enumerate_partitions(const SimplicialGraph& g,
                                                        int a) {
  auto comps = g.star_complement_components(a);
  int m = static_cast<int>(comps.size());
  std::vector<BasedPartition> out;
  if (m == 0) {
    out.push_back(BasedPartition{a, {}});
    return out;
  }
  // restricted growth strings over the components
  std::vector<int> assign(m, 0);
  while (true) {
    int blocks = *std::max_element(assign.begin(), assign.end()) + 1;
    BasedPartition p{a, std::vector<VertexSet>(blocks, 0)};
    for (int i = 0; i < m; ++i) p.petals[assign[i]] |= comps[i];
    sort_petals(p);
    out.push_back(p);
    int i = m - 1;
    while (i > 0) {
      int cap = *std::max_element(assign.begin(), assign.begin() + i) + 1;
      if (assign[i] < cap) {
        ++assign[i];
        break;
      }
      assign[i] = 0;
      --i;
    }
    if (i == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/* A vertex type: one based partition per vertex, pairwise compatible. */
struct VertexType {
  std::vector<BasedPartition> partitions;  // indexed by operative vertex
  bool operator==(const VertexType& o) const { return partitions == o.partitions; }
  bool operator!=(const VertexType& o) const { return !(*this == o); }
  bool operator<(const VertexType& o) const { return partitions < o.partitions; }
  bool nuclear() const {
    for (const auto& p : partitions)
      if (!p.trivial()) return false;
    return true;
  }
};

inline VertexType nuclear_vertex(const SimplicialGraph& g) {
  VertexType t;
  for (int a = 0; a < g.vertex_count(); ++a)
    t.partitions.push_back(trivial_partition(g, a));
  return t;
}

inline bool pairwise_compatible(const SimplicialGraph& g, const VertexType& t) {
  int n = static_cast<int>(t.partitions.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!compatible(g, t.partitions[i], t.partitions[j])) return false;
  return true;
}

inline bool vtype_leq(const VertexType& V, const VertexType& W) {
  for (std::size_t i = 0; i < V.partitions.size(); ++i)
    if (!partition_leq(V.partitions[i], W.partitions[i])) return false;
  return true;
}

inline std::size_t rank(const VertexType& V) {
  std::size_t r = 0;
  for (const auto& p : V.partitions)
    if (!p.petals.empty()) r += p.petals.size() - 1;
  return r;
}

inline VertexType join_vtypes(const SimplicialGraph& g,
                              const std::vector<VertexType>& ts) {
  if (ts.empty()) throw precondition_error("join of empty collection");
  VertexType r = ts[0];
  for (std::size_t i = 1; i < ts.size(); ++i)
    for (std::size_t a = 0; a < r.partitions.size(); ++a)
      r.partitions[a] = join_partitions(g, r.partitions[a], ts[i].partitions[a]);
  if (!pairwise_compatible(g, r))
    throw validity_error("JoinUndefined: collection is not pairwise compatible");
  return r;
}

// does the partition at b sit inside the one at a, measured by dominant petals
// towards S's operative ("the partition at a is contained in the one at b")
inline bool s_contained(const SimplicialGraph& g, const VertexType& V, int a, int b,
                        const BasedPartition& S) {
  int c = S.operative;
  VertexSet Da = dominant_petal(g, V.partitions[a], c);
  VertexSet Db = dominant_petal(g, V.partitions[b], c);
  return (Db & ~Da) == 0;
}

/* Operative factors whose partition crosses S and is minimal under
 * containment of dominant-petal complements. */
inline std::vector<int> innermost_set(const SimplicialGraph& g, const VertexType& V,
                                      const BasedPartition& S) {
  std::vector<int> crossing;
  for (std::size_t a = 0; a < V.partitions.size(); ++a) {
    if (static_cast<int>(a) == S.operative) continue;
    if (!compatible(g, V.partitions[a], S)) crossing.push_back(static_cast<int>(a));
  }
  std::vector<int> out;
  for (int a : crossing) {
    bool minimal = true;
    for (int x : crossing) {
      if (x == a) continue;
      // x strictly below a: D^c at a contained in D^c at x, not equal
      VertexSet Da = dominant_petal(g, V.partitions[a], S.operative);
      VertexSet Dx = dominant_petal(g, V.partitions[x], S.operative);
      if ((Da & ~Dx) == 0 && Da != Dx) minimal = false;
    }
    if (minimal) out.push_back(a);
  }
  return out;
}

inline VertexType vtype_refine(const SimplicialGraph& g, const VertexType& V,
                               const BasedPartition& S) {
  VertexType r = V;
  for (int a : innermost_set(g, V, S))
    r.partitions[a] = refine(g, V.partitions[a], S);
  return r;
}

inline VertexType vtype_disjoin(const SimplicialGraph& g, const VertexType& V,
                                const BasedPartition& S) {
  VertexType r = V;
  for (int a : innermost_set(g, V, S))
    r.partitions[a] = disjoin(g, V.partitions[a], S);
  return r;
}

struct WhiteheadPoset {
  std::vector<VertexType> elements;
  std::vector<std::size_t> ranks;
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  std::vector<std::vector<bool>> leq;
  std::size_t nuclear_index = 0;
};

/* Enumerate all vertex types: assign a partition per vertex, vertices visited
 * by increasing component count, pruning partial assignments that are already
 * incompatible. */
inline WhiteheadPoset enumerate_whitehead_poset(const SimplicialGraph& g,
                                                std::size_t max_elements = 1000000) {
  int n = g.vertex_count();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return g.star_complement_components(a).size() <
           g.star_complement_components(b).size();
  });
  std::vector<std::vector<BasedPartition>> choices(n);
  for (int a = 0; a < n; ++a) choices[a] = enumerate_partitions(g, a);

  WhiteheadPoset poset;
  VertexType cur;
  cur.partitions.resize(n);
  auto dfs = [&](auto&& self, int idx) -> void {
    if (idx == n) {
      if (poset.elements.size() >= max_elements)
        throw budget_error("poset element budget exceeded", poset.elements.size());
      poset.elements.push_back(cur);
      return;
    }
    int a = order[idx];
    for (const BasedPartition& p : choices[a]) {
      bool ok = true;
      for (int j = 0; j < idx && ok; ++j)
        if (!compatible(g, cur.partitions[order[j]], p)) ok = false;
      if (!ok) continue;
      cur.partitions[a] = p;
      self(self, idx + 1);
    }
  };
  dfs(dfs, 0);

  std::sort(poset.elements.begin(), poset.elements.end());
  std::size_t m = poset.elements.size();
  poset.ranks.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    poset.ranks[i] = rank(poset.elements[i]);
    if (poset.elements[i].nuclear()) poset.nuclear_index = i;
  }
  poset.leq.assign(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      poset.leq[i][j] = vtype_leq(poset.elements[i], poset.elements[j]);
  // rank strictly increases along covers, and one-step splits always exist,
  // so covers are exactly the comparable rank-difference-one pairs
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (poset.ranks[j] == poset.ranks[i] + 1 && poset.leq[i][j])
        poset.covers.emplace_back(i, j);
  return poset;
}

// one generator per petal of each partition, positive conjugator sign
inline std::vector<PartialConjugation> carried_generators(const SimplicialGraph& g,
                                                          const VertexType& V) {
  std::vector<PartialConjugation> out;
  for (const BasedPartition& p : V.partitions)
    for (VertexSet petal : p.petals)
      out.push_back(make_partial_conjugation(g, Letter{p.operative, +1}, petal));
  return out;
}

namespace detail {

// conjugation exponent of each generator image by powers of a; nullopt if some
// image is not of that shape
inline std::optional<std::vector<long long>> conjugation_exponents(
    const SimplicialGraph& g, const SymmetricAutomorphism& alpha, int a) {
  int n = g.vertex_count();
  std::vector<long long> k(n, 0);
  for (int b = 0; b < n; ++b) {
    NormalForm img = apply(g, alpha, {Letter{b, +1}});
    if (b == a || vin(g.star(a), b)) {
      if (img != generator_word(b)) return std::nullopt;
      continue;
    }
    if (img.size() % 2 == 0) return std::nullopt;
    long long e = (static_cast<long long>(img.size()) - 1) / 2;
    bool found = false;
    for (long long cand : {e, -e}) {
      Word w(static_cast<std::size_t>(cand < 0 ? -cand : cand),
             Letter{a, cand < 0 ? -1 : +1});
      w.push_back({b, +1});
      for (long long i = 0; i < (cand < 0 ? -cand : cand); ++i)
        w.push_back({a, cand < 0 ? +1 : -1});
      if (img == reduce(g, w)) {
        k[b] = cand;
        found = true;
        break;
      }
      if (cand == 0) break;
    }
    if (!found) return std::nullopt;
  }
  return k;
}

}  // namespace detail

/* Is alpha carried by A: operative fixed, star fixed, every outside vertex
 * conjugated by a petal-constant power of the operative. */
inline bool is_carried(const SimplicialGraph& g, const SymmetricAutomorphism& alpha,
                       const BasedPartition& A) {
  auto k = detail::conjugation_exponents(g, alpha, A.operative);
  if (!k) return false;
  for (VertexSet petal : A.petals) {
    long long v0 = (*k)[vleast(petal)];
    for (int b : bits(petal))
      if ((*k)[b] != v0) return false;
  }
  return true;
}

/* Coarsest carrier of a non-inner single-operative product: group the
 * components of the star-complement by conjugation exponent. */
inline BasedPartition full_carrier(const SimplicialGraph& g,
                                   const SymmetricAutomorphism& alpha) {
  auto se = detail::single_operative_exponents(g, alpha);
  if (!se)
    throw precondition_error("full_carrier requires a single operative factor");
  auto [a, e] = *se;
  VertexSet outside = g.all() & ~g.star(a);
  bool constant = true;
  std::optional<long long> common;
  for (int b : bits(outside)) {
    if (!common) common = e[b];
    else if (*common != e[b]) constant = false;
  }
  if (constant) throw precondition_error("full_carrier undefined for inner input");
  std::map<long long, VertexSet> groups;
  for (VertexSet C : g.star_complement_components(a)) groups[e[vleast(C)]] |= C;
  BasedPartition p{a, {}};
  for (auto& [key, petal] : groups) p.petals.push_back(petal);
  sort_petals(p);
  return p;
}

}  // namespace whmm

#endif
