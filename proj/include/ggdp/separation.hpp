#pragma once

#include <vector>

#include "ggdp/graph.hpp"
#include "ggdp/polytope.hpp"

namespace ggdp {

// A fractional solution (x*, y*); dense storage, zeros for absent entries.
using FractionalPoint = Point;

// Candidate bookkeeping for the cut-separation routines:
//   W_u      = {w in N<u> : |N<w>| >= 2 and, for all v in N<u> \ {w},
//               w <| v and v <| w},
//   W_{u1u2} = {w in W_u1 ∩ W_u2 : there are z1 in N<u1> \ N<u2> and
//               z2 in N<u2> \ N<u1> with N<w> \ ({u2} ∪ N<z1>) != ∅ and
//               N<w> \ ({u1} ∪ N<z2>) != ∅},
// plus the active set A consumed as cuts are emitted.
struct SeparationState {
  int n = 0;
  std::vector<VertexSet> w_sets;                 // indexed 1..n
  std::vector<std::vector<VertexSet>> w_pairs;   // [u1][u2] for u1 < u2
  VertexSet active = 0;                          // A

  VertexSet w_pair(int u1, int u2) const {
    if (u1 > u2) std::swap(u1, u2);
    return w_pairs[u1][u2];
  }
};

// Computes both candidate families exactly; A starts as V.
SeparationState precompute(const Instance& inst);

// Type I sweep: for u ascending and w in W_u ∩ A ascending, accumulate
// sum = y*_{w1} + ... + y*_{wi}; at each i >= 2 with x*_{ui} + sum > 1.1,
// emit x_{ui} + sum_{j<=i} y_{wj} <= 1, remove w from A and stop scanning
// that (u,w).  A is reset to V on entry (each invocation starts fresh).
std::vector<Inequality> separate_type1(const Instance& inst,
                                       SeparationState& state,
                                       const FractionalPoint& point);

// Type II sweep over pairs u1 < u2 (lexicographic) and w in W_{u1u2} ∩ A:
// at each i >= 2 where both x*_{u1 i} and x*_{u2 i} are fractional, for each
// k <= i with y*_{wk} fractional, test
//   sum_{j<=i} y*_{wj} + x*_{u1 i} + x*_{u2 i} + sum_{v in N^∪} y*_{vk} > 2.2
// and on success emit the Type II cut, remove w from A, move to the next w.
// Consumes A as left by separate_type1 (no reset).
std::vector<Inequality> separate_type2(const Instance& inst,
                                       SeparationState& state,
                                       const FractionalPoint& point);

// min(frac, 1 - frac) > 1e-6, the integrality tolerance of the sweeps.
bool is_fractional(double v);

}  // namespace ggdp
