#pragma once
#include "ggdp/graph.hpp"

namespace ggdp {

struct PathSpec {
  int lo = 1, hi = 1;     // contiguous vertex interval lo..hi
  VertexSet c_members = 0;  // C restricted to the interval
};

// Good-configuration recursion: n=1 -> lo in C; n=2 -> C != {lo,hi};
// n>=3 -> (lo not in C and good on lo+2..hi) or (hi not in C and good on lo..hi-2).
bool is_good_configuration(const PathSpec& spec);

// gamma_gr(P_n; C): n when C is a good configuration, n-1 otherwise.
int path_grundy(int n, VertexSet C);

// gamma_gr(W_n^k; C) with C in 0-based circulant labels. Returns m (n-2k if
// C=V else n-2k+1) when C=V or some i outside C has V \ N[i] inducing a path
// P_{n-2k-1} for which C is a good configuration; otherwise m-1.
int web_grundy(int n, int k, VertexSet C0);

}  // namespace ggdp
