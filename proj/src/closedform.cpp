#include "ggdp/closedform.hpp"

#include <map>
#include <stdexcept>

namespace ggdp {

namespace {

bool gconf(int lo, int hi, VertexSet c, std::map<std::pair<int, int>, bool>& memo) {
  if (lo > hi) throw std::invalid_argument("empty interval");
  auto key = std::make_pair(lo, hi);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  int t = hi - lo + 1;
  bool ok;
  if (t == 1)
    ok = vs_has(c, lo);
  else if (t == 2)
    ok = !(vs_has(c, lo) && vs_has(c, hi));
  else
    ok = (!vs_has(c, lo) && gconf(lo + 2, hi, c, memo)) ||
         (!vs_has(c, hi) && gconf(lo, hi - 2, c, memo));
  memo.emplace(key, ok);
  return ok;
}

}  // namespace

bool is_good_configuration(const PathSpec& spec) {
  std::map<std::pair<int, int>, bool> memo;
  return gconf(spec.lo, spec.hi, spec.c_members, memo);
}

int path_grundy(int n, VertexSet C) {
  if (n < 1) throw std::invalid_argument("path requires n >= 1");
  if (C & ~vs_all(n)) throw std::invalid_argument("C contains a vertex outside 1..n");
  if (n == 1 && C == 0) throw std::invalid_argument("P_1 with empty C is not a valid instance");
  return is_good_configuration({1, n, C}) ? n : n - 1;
}

int web_grundy(int n, int k, VertexSet C0) {
  if (n < 2 * (k + 1)) throw std::invalid_argument("web requires n >= 2(k+1)");
  VertexSet all0 = (VertexSet{1} << n) - 1;  // labels 0..n-1
  if (C0 & ~all0) throw std::invalid_argument("C contains a label outside 0..n-1");
  if (C0 == all0) return n - 2 * k;
  int m = n - 2 * k + 1;
  int t = n - 2 * k - 1;
  auto cyc_dist = [n](int a, int b) {
    int d = ((a - b) % n + n) % n;
    return std::min(d, n - d);
  };
  for (int i = 0; i < n; ++i) {
    if (vs_has(C0, i)) continue;
    // V \ N[i] is the arc i+k+1, ..., i+n-k-1 (mod n), t vertices
    std::vector<int> arc(t);
    for (int p = 0; p < t; ++p) arc[p] = (i + k + 1 + p) % n;
    // check literally that the induced subgraph is a path
    int ecount = 0;
    bool degree_ok = true;
    for (int a = 0; a < t; ++a) {
      int deg = 0;
      for (int b = 0; b < t; ++b)
        if (a != b && cyc_dist(arc[a], arc[b]) <= k) ++deg;
      if (deg > 2) degree_ok = false;
      ecount += deg;
    }
    ecount /= 2;
    if (!(degree_ok && ecount == t - 1)) continue;
    VertexSet c_on_arc = 0;
    for (int p = 0; p < t; ++p)
      if (vs_has(C0, arc[p])) c_on_arc |= vbit(p + 1);
    if (is_good_configuration({1, t, c_on_arc})) return m;
  }
  return m - 1;
}

}  // namespace ggdp
