#ifndef WHMM_WORDS_HPP
#define WHMM_WORDS_HPP

#include <algorithm>
#include <optional>
#include <queue>
#include <set>

#include "graph.hpp"

namespace whmm {

struct Letter {
  int vertex;
  int sign;  // +1 or -1
  bool operator==(const Letter& o) const {
    return vertex == o.vertex && sign == o.sign;
  }
  bool operator!=(const Letter& o) const { return !(*this == o); }
  // canonical letter order: by vertex id, positive before negative
  bool operator<(const Letter& o) const {
    if (vertex != o.vertex) return vertex < o.vertex;
    return sign > o.sign;
  }
  Letter inverse() const { return {vertex, -sign}; }
};

using Word = std::vector<Letter>;

struct NormalForm {
  Word letters;  // graphically reduced, canonical linearization
  bool operator==(const NormalForm& o) const { return letters == o.letters; }
  bool operator!=(const NormalForm& o) const { return !(*this == o); }
  bool operator<(const NormalForm& o) const { return letters < o.letters; }
  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
};

struct CyclicWord {
  Word letters;  // cyclically graphically reduced
  std::size_t size() const { return letters.size(); }
};

namespace detail {

// Two letters commute as trace symbols iff distinct adjacent vertices.
inline bool independent(const SimplicialGraph& g, const Letter& p, const Letter& q) {
  return p.vertex != q.vertex && g.adjacent(p.vertex, q.vertex);
}

/* Left-greedy stacking: push each letter past commuting ones, cancel against a
 * reachable inverse. A removal cannot re-enable an earlier cancellable pair, so
 * one pass yields a graphically reduced word. */
inline Word stack_reduce(const SimplicialGraph& g, const Word& w) {
  Word pile;
  pile.reserve(w.size());
  for (const Letter& l : w) {
    bool cancelled = false;
    for (int i = static_cast<int>(pile.size()) - 1; i >= 0; --i) {
      const Letter& p = pile[i];
      if (p.vertex == l.vertex) {
        if (p.sign == -l.sign) {
          pile.erase(pile.begin() + i);
          cancelled = true;
        }
        break;  // same sign: l cannot move past nor cancel further left
      }
      if (!g.adjacent(p.vertex, l.vertex)) break;
    }
    if (!cancelled) pile.push_back(l);
  }
  return pile;
}

// positions whose letter can be commuted to the front of the remaining word
inline std::vector<int> initial_positions(const SimplicialGraph& g, const Word& w) {
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(w.size()); ++j) {
    bool ok = true;
    for (int i = 0; i < j && ok; ++i)
      if (!independent(g, w[i], w[j])) ok = false;
    if (ok) out.push_back(j);
  }
  return out;
}

// lexicographically least linearization of the trace of a reduced word
inline Word lex_linearize(const SimplicialGraph& g, Word w) {
  Word out;
  out.reserve(w.size());
  while (!w.empty()) {
    auto avail = initial_positions(g, w);
    int best = avail[0];
    for (int j : avail)
      if (w[j] < w[best]) best = j;
    out.push_back(w[best]);
    w.erase(w.begin() + best);
  }
  return out;
}

}  // namespace detail

inline NormalForm reduce(const SimplicialGraph& g, const Word& w) {
  return {detail::lex_linearize(g, detail::stack_reduce(g, w))};
}

inline NormalForm multiply(const SimplicialGraph& g, const NormalForm& u,
                           const NormalForm& v) {
  Word w = u.letters;
  w.insert(w.end(), v.letters.begin(), v.letters.end());
  return reduce(g, w);
}

inline NormalForm invert(const SimplicialGraph& g, const NormalForm& u) {
  Word w(u.letters.rbegin(), u.letters.rend());
  for (Letter& l : w) l.sign = -l.sign;
  return reduce(g, w);
}

inline NormalForm generator_word(int v) { return {{Letter{v, +1}}}; }

inline std::vector<long long> abelianization(const SimplicialGraph& g, const Word& w) {
  std::vector<long long> e(g.vertex_count(), 0);
  for (const Letter& l : w) e[l.vertex] += l.sign;
  return e;
}

/* Strip conjugating letters until every cyclic permutation is reduced.
 * Returns (c, h) with w = h c h^{-1} and |c| the cyclic word length. */
inline std::pair<CyclicWord, NormalForm> cyclic_reduce(const SimplicialGraph& g,
                                                       const Word& w) {
  Word u = reduce(g, w).letters;
  Word h;
  bool changed = true;
  while (changed && u.size() >= 2) {
    changed = false;
    int n = static_cast<int>(u.size());
    for (int p = 0; p < n && !changed; ++p) {
      // prefix before p must lie in the star of u[p]'s vertex
      bool pre = true;
      for (int i = 0; i < p && pre; ++i)
        if (u[i].vertex != u[p].vertex && !g.adjacent(u[i].vertex, u[p].vertex))
          pre = false;
      if (!pre) continue;
      for (int q = p + 1; q < n && !changed; ++q) {
        if (u[q] != u[p].inverse()) continue;
        bool suf = true;
        for (int i = q + 1; i < n && suf; ++i)
          if (u[i].vertex != u[p].vertex && !g.adjacent(u[i].vertex, u[p].vertex))
            suf = false;
        if (!suf) continue;
        h.push_back(u[p]);
        Word next;
        next.reserve(n - 2);
        for (int i = 0; i < n; ++i)
          if (i != p && i != q) next.push_back(u[i]);
        u = reduce(g, next).letters;
        changed = true;
      }
    }
  }
  return {CyclicWord{u}, reduce(g, h)};
}

inline std::size_t cyclic_length(const SimplicialGraph& g, const Word& w) {
  return cyclic_reduce(g, w).first.size();
}

struct TriState {
  enum Value { Yes, No, Unknown } value;
  NormalForm witness;  // meaningful for Yes
  bool yes() const { return value == Yes; }
  bool no() const { return value == No; }
  bool unknown() const { return value == Unknown; }
};

/* Conjugacy test: match cyclic reductions under the closure of "rotate one
 * trace-initial letter to the back". The closure is the full set of cyclically
 * reduced representatives, so exhausting it proves non-conjugacy; hitting the
 * state cap yields Unknown. */
inline TriState is_conjugate(const SimplicialGraph& g, const Word& uw, const Word& vw,
                             std::size_t state_cap = 20000) {
  if (abelianization(g, uw) != abelianization(g, vw)) return {TriState::No, {}};
  auto [cu, hu] = cyclic_reduce(g, uw);
  auto [cv, hv] = cyclic_reduce(g, vw);
  if (cu.size() != cv.size()) return {TriState::No, {}};
  NormalForm target = reduce(g, cv.letters);
  NormalForm start = reduce(g, cu.letters);
  // BFS states: canonical word w plus t with cu = t w t^{-1}
  std::map<Word, NormalForm> seen;
  std::queue<Word> todo;
  seen.emplace(start.letters, NormalForm{});
  todo.push(start.letters);
  while (!todo.empty()) {
    Word w = todo.front();
    todo.pop();
    NormalForm t = seen.at(w);
    if (w == target.letters) {
      // u = (hu t hv^{-1}) v (...)^{-1}
      NormalForm wit = multiply(g, multiply(g, hu, t), invert(g, hv));
      return {TriState::Yes, wit};
    }
    for (int j : detail::initial_positions(g, w)) {
      Word rest;
      rest.reserve(w.size());
      for (int i = 0; i < static_cast<int>(w.size()); ++i)
        if (i != j) rest.push_back(w[i]);
      rest.push_back(w[j]);
      Word nxt = reduce(g, rest).letters;
      if (seen.count(nxt)) continue;
      if (seen.size() >= state_cap) return {TriState::Unknown, {}};
      NormalForm nt = multiply(g, t, NormalForm{{w[j]}});
      seen.emplace(nxt, nt);
      todo.push(nxt);
    }
  }
  return {TriState::No, {}};
}

/* C^a_A: conjugate the vertices of A by the (signed) conjugator letter, fix the
 * rest. A must be a non-empty union of components of the star-complement. */
struct PartialConjugation {
  Letter conjugator;
  VertexSet support = 0;
  std::vector<VertexSet> components;  // the components making up the support
  PartialConjugation inverse() const {
    return {conjugator.inverse(), support, components};
  }
};

inline PartialConjugation make_partial_conjugation(const SimplicialGraph& g,
                                                   Letter a, VertexSet A) {
  if (A == 0) throw validity_error("partial conjugation needs non-empty support");
  if (A & g.star(a.vertex))
    throw validity_error("support meets the star of the conjugator");
  PartialConjugation pc{a, A, {}};
  for (VertexSet C : g.star_complement_components(a.vertex))
    if (C & A) {
      if ((C & ~A) != 0)
        throw validity_error("support is not a union of components");
      pc.components.push_back(C);
    }
  return pc;
}

struct SymmetricAutomorphism {
  // composition right-to-left: factors[0] is applied last
  std::vector<PartialConjugation> factors;
};

inline SymmetricAutomorphism compose(const SymmetricAutomorphism& f,
                                     const SymmetricAutomorphism& s) {
  SymmetricAutomorphism r = f;
  r.factors.insert(r.factors.end(), s.factors.begin(), s.factors.end());
  return r;
}

inline SymmetricAutomorphism inverse(const SymmetricAutomorphism& a) {
  SymmetricAutomorphism r;
  for (auto it = a.factors.rbegin(); it != a.factors.rend(); ++it)
    r.factors.push_back(it->inverse());
  return r;
}

namespace detail {

inline Word apply_one(const PartialConjugation& pc, const Word& w) {
  Word out;
  out.reserve(w.size() * 3);
  for (const Letter& l : w) {
    if (vin(pc.support, l.vertex)) {
      out.push_back(pc.conjugator);
      out.push_back(l);
      out.push_back(pc.conjugator.inverse());
    } else {
      out.push_back(l);
    }
  }
  return out;
}

}  // namespace detail

inline NormalForm apply(const SimplicialGraph& g, const SymmetricAutomorphism& a,
                        const Word& w) {
  Word cur = reduce(g, w).letters;
  for (auto it = a.factors.rbegin(); it != a.factors.rend(); ++it)
    cur = reduce(g, detail::apply_one(*it, cur)).letters;
  return {cur};
}

inline NormalForm apply_inverse(const SimplicialGraph& g,
                                const SymmetricAutomorphism& a, const Word& w) {
  Word cur = reduce(g, w).letters;
  for (const PartialConjugation& pc : a.factors)
    cur = reduce(g, detail::apply_one(pc.inverse(), cur)).letters;
  return {cur};
}

struct Basis {
  std::vector<NormalForm> images;  // one per vertex, conjugate to its generator
  SymmetricAutomorphism source;
};

inline Basis images(const SimplicialGraph& g, const SymmetricAutomorphism& a) {
  Basis b;
  b.source = a;
  for (int v = 0; v < g.vertex_count(); ++v)
    b.images.push_back(apply(g, a, {Letter{v, +1}}));
  return b;
}

inline bool is_identity(const SimplicialGraph& g, const SymmetricAutomorphism& a) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (apply(g, a, {Letter{v, +1}}) != generator_word(v)) return false;
  return true;
}

namespace detail {

// per-vertex conjugation exponents of a product of partial conjugations at a
// single operative vertex; nullopt when the operative vertices are mixed
inline std::optional<std::pair<int, std::vector<long long>>> single_operative_exponents(
    const SimplicialGraph& g, const SymmetricAutomorphism& a) {
  if (a.factors.empty()) return std::nullopt;
  int op = a.factors[0].conjugator.vertex;
  std::vector<long long> e(g.vertex_count(), 0);
  for (const PartialConjugation& pc : a.factors) {
    if (pc.conjugator.vertex != op) return std::nullopt;
    for (int b : bits(pc.support)) e[b] += pc.conjugator.sign;
  }
  return std::make_pair(op, e);
}

// element of the special subgroup on a star? support of the normal form tells
inline bool in_star_subgroup(const SimplicialGraph& g, const NormalForm& w, int v) {
  for (const Letter& l : w.letters)
    if (!vin(g.star(v), l.vertex)) return false;
  return true;
}

}  // namespace detail

/* Inner test. Exact (both directions) for products at a single operative
 * vertex via the constant-exponent criterion; otherwise a bounded search for a
 * common conjugator inside one coset h_{v0}<st(v0)>, which is provably
 * exhaustive when some vertex has a singleton star. */
inline TriState is_inner(const SimplicialGraph& g, const SymmetricAutomorphism& a,
                         std::size_t bound = 6, std::size_t state_cap = 20000) {
  int n = g.vertex_count();
  if (is_identity(g, a)) return {TriState::Yes, {}};

  if (auto se = detail::single_operative_exponents(g, a)) {
    auto [op, e] = *se;
    VertexSet outside = g.all() & ~g.star(op);
    bool constant = true;
    long long k = 0;
    bool first = true;
    for (int b : bits(outside)) {
      if (first) k = e[b], first = false;
      else if (e[b] != k) constant = false;
    }
    if (!constant) return {TriState::No, {}};
    Word wit(static_cast<std::size_t>(k < 0 ? -k : k),
             Letter{op, k < 0 ? -1 : +1});
    return {TriState::Yes, reduce(g, wit)};
  }

  // conjugator candidates: images give h_v with a(v) = h_v v h_v^{-1}
  std::vector<NormalForm> h(n);
  std::size_t maxh = 0;
  for (int v = 0; v < n; ++v) {
    auto [c, conj] = cyclic_reduce(g, apply(g, a, {Letter{v, +1}}).letters);
    if (c.letters != Word{Letter{v, +1}}) return {TriState::No, {}};
    h[v] = conj;
    maxh = std::max(maxh, conj.size());
  }
  int v0 = 0;
  for (int v = 1; v < n; ++v)
    if (vcount(g.star(v)) < vcount(g.star(v0))) v0 = v;
  std::size_t depth = bound + maxh + 2;

  auto good = [&](const NormalForm& cand) {
    for (int v = 0; v < n; ++v) {
      NormalForm d = multiply(g, invert(g, cand), h[v]);
      if (!detail::in_star_subgroup(g, d, v)) return false;
    }
    return true;
  };

  // BFS over s in <st(v0)> by length, testing g0 = h_{v0} s
  std::set<Word> seen;
  std::queue<std::pair<NormalForm, std::size_t>> todo;
  todo.push({NormalForm{}, 0});
  seen.insert({});
  bool capped = false;
  std::vector<Letter> star_letters;
  for (int u : bits(g.star(v0))) {
    star_letters.push_back({u, +1});
    star_letters.push_back({u, -1});
  }
  while (!todo.empty()) {
    auto [s, d] = todo.front();
    todo.pop();
    NormalForm cand = multiply(g, h[v0], s);
    if (good(cand)) return {TriState::Yes, cand};
    if (d >= depth) continue;
    for (const Letter& l : star_letters) {
      NormalForm nxt = multiply(g, s, NormalForm{{l}});
      if (nxt.size() <= s.size()) continue;  // only grow outward
      if (seen.count(nxt.letters)) continue;
      if (seen.size() >= state_cap) {
        capped = true;
        continue;
      }
      seen.insert(nxt.letters);
      todo.push({nxt, d + 1});
    }
  }
  if (!capped && vcount(g.star(v0)) == 1) return {TriState::No, {}};
  return {TriState::Unknown, {}};
}

}  // namespace whmm

#endif
