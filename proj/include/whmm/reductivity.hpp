#ifndef WHMM_REDUCTIVITY_HPP
#define WHMM_REDUCTIVITY_HPP

#include <algorithm>
#include <optional>

#include "whitehead.hpp"

namespace whmm {

/* A finite multiset of cyclically reduced words; repeated words weight
 * heights additively. */
struct WordSet {
  std::vector<CyclicWord> words;

  static WordSet from_words(const SimplicialGraph& g, const std::vector<Word>& ws) {
    WordSet s;
    for (const Word& w : ws) s.words.push_back(cyclic_reduce(g, w).first);
    return s;
  }

  // W_0 = {a_i a_j : i < j}, the height-floor word set
  static WordSet pair_words(const SimplicialGraph& g) {
    std::vector<Word> ws;
    for (int i = 0; i < g.vertex_count(); ++i)
      for (int j = i + 1; j < g.vertex_count(); ++j)
        ws.push_back({Letter{i, +1}, Letter{j, +1}});
    return from_words(g, ws);
  }

  std::size_t max_length() const {
    std::size_t m = 0;
    for (const auto& w : words) m = std::max(m, w.size());
    return m;
  }
};

// total cyclic length of W rewritten in the basis alpha(V)
inline std::size_t height(const SimplicialGraph& g, const SymmetricAutomorphism& alpha,
                          const WordSet& W) {
  std::size_t h = 0;
  for (const CyclicWord& w : W.words)
    h += cyclic_length(g, apply_inverse(g, alpha, w.letters).letters);
  return h;
}

inline std::size_t height(const SimplicialGraph& g, const Basis& X, const WordSet& W) {
  return height(g, X.source, W);
}

// red_W(X, alpha): height drop achieved by alpha on the basis X
inline long long red(const SimplicialGraph& g, const SymmetricAutomorphism& X_source,
                     const SymmetricAutomorphism& alpha, const WordSet& W) {
  return static_cast<long long>(height(g, X_source, W)) -
         static_cast<long long>(height(g, compose(alpha, X_source), W));
}

inline long long red(const SimplicialGraph& g, const SymmetricAutomorphism& alpha,
                     const WordSet& W) {
  return red(g, SymmetricAutomorphism{}, alpha, W);
}

/* Number of cyclic subsegments of the shape (c u d^{-1})^{+-1} with u a word
 * over the link letters of b; a subsegment matching both shapes counts once. */
inline std::size_t adjacency_counter(const SimplicialGraph& g, const WordSet& W,
                                     Letter b, Letter c, Letter d) {
  VertexSet lk = g.link(b.vertex);
  if (vin(lk, c.vertex) || vin(lk, d.vertex))
    throw precondition_error("adjacency counter letters must avoid the link of b");
  Letter dinv = d.inverse(), cinv = c.inverse();
  std::size_t count = 0;
  for (const CyclicWord& w : W.words) {
    int n = static_cast<int>(w.size());
    if (n < 2) continue;
    for (int i = 0; i < n; ++i) {
      bool head_c = w.letters[i] == c, head_d = w.letters[i] == d;
      if (!head_c && !head_d) continue;
      for (int t = 0; t <= n - 2; ++t) {
        if (t > 0 && !vin(lk, w.letters[(i + t) % n].vertex)) break;
        int j = (i + 1 + t) % n;
        const Letter& last = w.letters[j];
        if ((head_c && last == dinv) || (head_d && last == cinv)) ++count;
      }
    }
  }
  return count;
}

inline std::size_t set_counter(const SimplicialGraph& g, const WordSet& W, Letter b,
                               const std::vector<Letter>& B,
                               const std::vector<Letter>& C) {
  VertexSet lk = g.link(b.vertex);
  std::size_t total = 0;
  for (const Letter& c : B) {
    if (vin(lk, c.vertex)) continue;
    for (const Letter& d : C) {
      if (vin(lk, d.vertex)) continue;
      total += adjacency_counter(g, W, b, c, d);
    }
  }
  return total;
}

namespace detail {

inline std::vector<Letter> all_letters(const SimplicialGraph& g) {
  std::vector<Letter> out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    out.push_back({v, +1});
    out.push_back({v, -1});
  }
  return out;
}

inline std::vector<Letter> support_letters(VertexSet s) {
  std::vector<Letter> out;
  for (int v : bits(s)) {
    out.push_back({v, +1});
    out.push_back({v, -1});
  }
  return out;
}

inline std::vector<Letter> minus(std::vector<Letter> ls,
                                 const std::vector<Letter>& drop) {
  ls.erase(std::remove_if(ls.begin(), ls.end(),
                          [&](const Letter& l) {
                            return std::find(drop.begin(), drop.end(), l) !=
                                   drop.end();
                          }),
           ls.end());
  return ls;
}

}  // namespace detail

/* The two counter formulas for the reductivity of a partial conjugation; the
 * signed conjugator letter b may be negative. */
inline long long red_via_day_form1(const SimplicialGraph& g,
                                   const PartialConjugation& beta, const WordSet& W) {
  Letter b = beta.conjugator;
  auto Bpm = detail::support_letters(beta.support);
  auto rest = detail::minus(detail::all_letters(g), Bpm);
  rest = detail::minus(rest, {b});
  long long gain = static_cast<long long>(set_counter(g, W, b, {b}, Bpm));
  long long loss = static_cast<long long>(set_counter(g, W, b, Bpm, rest));
  return gain - loss;
}

inline long long red_via_day_form2(const SimplicialGraph& g,
                                   const PartialConjugation& beta, const WordSet& W) {
  Letter b = beta.conjugator;
  auto Bpm = detail::support_letters(beta.support);
  auto Bb = Bpm;
  Bb.push_back(b);
  auto rest = detail::minus(detail::all_letters(g), Bpm);
  rest = detail::minus(rest, {b});
  long long gain = static_cast<long long>(set_counter(g, W, b, {b}, detail::all_letters(g)));
  long long loss = static_cast<long long>(set_counter(g, W, b, Bb, rest));
  return gain - loss;
}

inline long long red_via_day(const SimplicialGraph& g, const PartialConjugation& beta,
                             const WordSet& W) {
  return red_via_day_form1(g, beta, W);
}

inline SymmetricAutomorphism pc_power(const PartialConjugation& pc, long long k) {
  SymmetricAutomorphism a;
  PartialConjugation f = k < 0 ? pc.inverse() : pc;
  for (long long i = 0; i < (k < 0 ? -k : k); ++i) a.factors.push_back(f);
  return a;
}

struct ReductivityResult {
  long long value = 0;
  bool bound_limited = false;  // some optimum sat on the exponent-box boundary
};

/* Max reductivity over non-inner automorphisms carried by A, petal exponents
 * in [-bound, bound]. The petals interact (conjugating powers of the shared
 * operative letter can cancel across petals), so the exponent box is scanned
 * jointly; constant exponent vectors are exactly the inner ones and are
 * skipped. */
inline ReductivityResult partition_reductivity(const SimplicialGraph& g,
                                               const BasedPartition& A,
                                               const WordSet& W, long long bound) {
  if (A.trivial()) return {0, false};
  int a = A.operative;
  std::size_t m = A.petals.size();
  double box = 1;
  for (std::size_t i = 0; i < m; ++i) box *= 2 * bound + 1;
  if (box > 4e6) throw budget_error("exponent box too large", 0);
  std::vector<PartialConjugation> pcs;
  for (VertexSet petal : A.petals)
    pcs.push_back(make_partial_conjugation(g, Letter{a, +1}, petal));
  bool have = false, limited = true;
  long long best = 0;
  std::vector<long long> ks(m, -bound);
  while (true) {
    if (!std::all_of(ks.begin(), ks.end(),
                     [&](long long k) { return k == ks[0]; })) {
      SymmetricAutomorphism alpha;
      for (std::size_t i = 0; i < m; ++i)
        alpha = compose(pc_power(pcs[i], ks[i]), alpha);
      long long v = red(g, alpha, W);
      bool interior = std::all_of(ks.begin(), ks.end(), [&](long long k) {
        return -bound < k && k < bound;
      });
      if (!have || v > best) {
        have = true;
        best = v;
        limited = !interior;
      } else if (v == best && interior) {
        limited = false;
      }
    }
    std::size_t i = 0;
    while (i < m && ks[i] == bound) ks[i++] = -bound;
    if (i == m) break;
    ++ks[i];
  }
  return {best, limited};
}

/* Max over carried non-inner automorphisms of a vertex type: per-factor maxima
 * combine additively; at least one factor must contribute a non-inner part. */
inline ReductivityResult vertex_reductivity(const SimplicialGraph& g,
                                            const VertexType& V, const WordSet& W,
                                            long long bound) {
  std::vector<ReductivityResult> per;
  for (const BasedPartition& p : V.partitions)
    if (!p.trivial()) per.push_back(partition_reductivity(g, p, W, bound));
  if (per.empty()) return {0, false};
  long long pos = 0, best_single = per[0].value;
  bool limited = false, any_nonneg = false;
  for (const auto& r : per) {
    if (r.value >= 0) {
      pos += std::max(r.value, 0LL);
      any_nonneg = true;
    }
    best_single = std::max(best_single, r.value);
    limited = limited || r.bound_limited;
  }
  return {any_nonneg ? pos : best_single, limited};
}

inline bool is_reductive(const SimplicialGraph& g, const BasedPartition& A,
                         const WordSet& W, long long bound) {
  return partition_reductivity(g, A, W, bound).value >= 0;
}

inline bool is_strictly_reductive(const SimplicialGraph& g, const BasedPartition& A,
                                  const WordSet& W, long long bound) {
  return partition_reductivity(g, A, W, bound).value > 0;
}

inline bool is_reductive(const SimplicialGraph& g, const VertexType& V,
                         const WordSet& W, long long bound) {
  return vertex_reductivity(g, V, W, bound).value >= 0;
}

inline bool is_strictly_reductive(const SimplicialGraph& g, const VertexType& V,
                                  const WordSet& W, long long bound) {
  return vertex_reductivity(g, V, W, bound).value > 0;
}

inline long long default_exponent_bound(const WordSet& W) {
  return std::max<long long>(1, static_cast<long long>(W.max_length()));
}

/* Deterministic exhaustive scan over signed conjugators and component unions;
 * returns the first strictly reductive partial conjugation. */
inline std::optional<PartialConjugation> find_strictly_reductive(
    const SimplicialGraph& g, const WordSet& W) {
  for (int a = 0; a < g.vertex_count(); ++a) {
    auto comps = g.star_complement_components(a);
    int m = static_cast<int>(comps.size());
    for (int sign : {+1, -1}) {
      for (unsigned mask = 1; mask < (1u << m); ++mask) {
        VertexSet A = 0;
        for (int i = 0; i < m; ++i)
          if ((mask >> i) & 1) A |= comps[i];
        PartialConjugation pc = make_partial_conjugation(g, Letter{a, sign}, A);
        if (red(g, pc_power(pc, 1), W) > 0) return pc;
      }
    }
  }
  return std::nullopt;
}

}  // namespace whmm

#endif
