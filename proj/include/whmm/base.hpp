#ifndef WHMM_BASE_HPP
#define WHMM_BASE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace whmm {

// Vertex sets are bitsets over dense ids; 64 vertices is far beyond desk scale.
using VertexSet = std::uint64_t;

constexpr int MAX_VERTICES = 64;

inline VertexSet vbit(int v) { return VertexSet{1} << v; }
inline bool vin(VertexSet s, int v) { return (s >> v) & 1; }
inline int vcount(VertexSet s) { return __builtin_popcountll(s); }
inline int vleast(VertexSet s) { return __builtin_ctzll(s); }  // pre: s != 0

// Iterate set bits: for (int v : bits(S)) ...
struct bits {
  VertexSet s;
  explicit bits(VertexSet s_) : s(s_) {}
  struct iter {
    VertexSet s;
    bool operator!=(const iter& o) const { return s != o.s; }
    void operator++() { s &= s - 1; }
    int operator*() const { return vleast(s); }
  };
  iter begin() const { return {s}; }
  iter end() const { return {0}; }
};

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct validity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct budget_error : std::runtime_error {
  // carries how far the computation got before the budget tripped
  std::size_t partial_count;
  budget_error(const std::string& msg, std::size_t partial)
      : std::runtime_error(msg), partial_count(partial) {}
};
struct parse_error : std::runtime_error {
  int line, column;
  parse_error(const std::string& msg, int l, int c)
      : std::runtime_error(msg + " at line " + std::to_string(l) + ", column " +
                           std::to_string(c)),
        line(l),
        column(c) {}
};

}  // namespace whmm

#endif
