#pragma once
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace ggdp {

// Vertices are 1..n; bit v of a VertexSet is vertex v (bit 0 unused except by
// the 0-based web/C conventions noted where they apply).
using VertexSet = std::uint64_t;

constexpr int kMaxVertices = 63;

inline VertexSet vbit(int v) { return VertexSet{1} << v; }
inline bool vs_has(VertexSet s, int v) { return (s >> v) & 1; }
inline int vs_card(VertexSet s) { return std::popcount(s); }

inline VertexSet vs_of(std::initializer_list<int> vs) {
  VertexSet s = 0;
  for (int v : vs) s |= vbit(v);
  return s;
}

std::vector<int> vs_list(VertexSet s);
std::string vs_str(VertexSet s);

// All vertices 1..n.
inline VertexSet vs_all(int n) { return ((VertexSet{1} << n) - 1) << 1; }

struct Instance {
  int n = 0;
  VertexSet closed = 0;  // C: vertices with closed neighborhoods
  std::vector<std::pair<int, int>> edges;  // normalized u < v, sorted
  std::vector<VertexSet> open_adj;         // N(v), indexed 1..n

  VertexSet vertices() const { return vs_all(n); }
  bool in_c(int v) const { return vs_has(closed, v); }
  // N<v>: closed neighborhood if v in C, open otherwise
  VertexSet nb(int v) const { return open_adj[v] | (in_c(v) ? vbit(v) : 0); }
  int degree(int v) const { return vs_card(open_adj[v]); }
};

// Validates: 1 <= n <= 63, ids in range, no loops/duplicate edges, and the
// GGDP invariant that no vertex outside C is isolated.
Instance make_instance(int n, std::vector<std::pair<int, int>> edges, VertexSet closed);

// File format: `p ggdp <n> <edges>`, optional `c <v1> ...` (bare `c` = empty),
// `e <u> <v>` per edge, `#` comments.
Instance parse_instance(const std::string& text);
std::string write_instance(const Instance& inst);

// m = n - delta(G;C) + 1 where delta = min_v |N<v>|
int upper_bound_m(const Instance& inst);

// v1 "precedes" v2:  N<v2> \ N<v1> != empty
bool precedes(const Instance& inst, int v1, int v2);

bool is_clutter(const Instance& inst);
bool is_strong_clutter(const Instance& inst);
bool is_connected(const Instance& inst);
bool is_twin_free(const Instance& inst);

// Unordered pairs u < v with N<u> = N<v>.
std::vector<std::pair<int, int>> find_twins(const Instance& inst);

// Repeatedly removes the larger vertex of the first twin pair until twin-free;
// result is compact-relabeled, removed lists original ids in removal order.
std::pair<Instance, std::vector<int>> reduce_twins(const Instance& inst);

struct Component {
  Instance inst;
  std::vector<int> orig;  // orig[new_id] = original id (index 0 unused)
};
std::vector<Component> split_components(const Instance& inst);

Instance gen_path(int n, VertexSet C);

// Web graph W_n^k with the 0-based circulant labels shifted by +1; C0 is given
// in 0-based labels (bit i = label i), matching the closed-form conventions.
Instance gen_web(int n, int k, VertexSet C0);

enum class CMode { Empty, All, Half };

// G(n,p) resampled until connected and twin-free; throws after max_retries.
Instance gen_random(int n, double p, CMode c_mode, std::uint64_t seed, int max_retries = 1000);

// Adds a twin u' = n+1 of u: adjacent to N(u), in C iff u is, with the edge
// (u,u') present iff u is in C (so N<u'> = N<u> holds in both cases).
Instance add_twin(const Instance& inst, int u);

}  // namespace ggdp
