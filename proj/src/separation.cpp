#include "ggdp/separation.hpp"

#include <cmath>
#include <stdexcept>

namespace ggdp {

namespace {

void require_match(const Instance& inst, const FractionalPoint& point) {
  if (point.n != inst.n || point.m != upper_bound_m(inst))
    throw std::invalid_argument(
        "separation: point dimensions do not match the instance");
}

}  // namespace

bool is_fractional(double v) {
  const double f = v - std::floor(v);
  return std::min(f, 1.0 - f) > 1e-6;
}

SeparationState precompute(const Instance& inst) {
  const int n = inst.n;
  SeparationState st;
  st.n = n;
  st.w_sets.assign(n + 1, 0);
  st.w_pairs.assign(n + 1, std::vector<VertexSet>(n + 1, 0));
  st.active = inst.vertices();
  for (int u = 1; u <= n; ++u) {
    VertexSet ws = 0;
    for (int w : vs_list(inst.nb(u))) {
      if (vs_card(inst.nb(w)) < 2) continue;
      bool ok = true;
      for (int v : vs_list(inst.nb(u) & ~vbit(w)))
        if (!precedes(inst, w, v) || !precedes(inst, v, w)) {
          ok = false;
          break;
        }
      if (ok) ws |= vbit(w);
    }
    st.w_sets[u] = ws;
  }
  for (int u1 = 1; u1 <= n; ++u1)
    for (int u2 = u1 + 1; u2 <= n; ++u2) {
      const VertexSet common = st.w_sets[u1] & st.w_sets[u2];
      if (common == 0) continue;
      const VertexSet z1s = inst.nb(u1) & ~inst.nb(u2);
      const VertexSet z2s = inst.nb(u2) & ~inst.nb(u1);
      if (z1s == 0 || z2s == 0) continue;
      VertexSet out = 0;
      for (int w : vs_list(common)) {
        bool ok1 = false, ok2 = false;
        for (int z1 : vs_list(z1s))
          if ((inst.nb(w) & ~(vbit(u2) | inst.nb(z1))) != 0) {
            ok1 = true;
            break;
          }
        for (int z2 : vs_list(z2s))
          if ((inst.nb(w) & ~(vbit(u1) | inst.nb(z2))) != 0) {
            ok2 = true;
            break;
          }
        if (ok1 && ok2) out |= vbit(w);
      }
      st.w_pairs[u1][u2] = out;
    }
  return st;
}

std::vector<Inequality> separate_type1(const Instance& inst,
                                       SeparationState& state,
                                       const FractionalPoint& point) {
  require_match(inst, point);
  state.active = inst.vertices();
  const int m = point.m;
  std::vector<Inequality> cuts;
  for (int u = 1; u <= inst.n; ++u) {
    for (int w : vs_list(state.w_sets[u])) {
      if (!vs_has(state.active, w)) continue;
      double sum = point.y(w, 1);
      for (int i = 2; i <= m; ++i) {
        sum += point.y(w, i);
        if (point.x(u, i) + sum > 1.1) {
          cuts.push_back(make_type1(inst, u, w, i));
          state.active &= ~vbit(w);
          break;
        }
      }
    }
  }
  return cuts;
}

std::vector<Inequality> separate_type2(const Instance& inst,
                                       SeparationState& state,
                                       const FractionalPoint& point) {
  require_match(inst, point);
  const int m = point.m;
  std::vector<Inequality> cuts;
  for (int u1 = 1; u1 <= inst.n; ++u1)
    for (int u2 = u1 + 1; u2 <= inst.n; ++u2) {
      const VertexSet ws = state.w_pairs[u1][u2];
      if (ws == 0) continue;
      const VertexSet nun = inst.nb(u1) | inst.nb(u2);
      for (int w : vs_list(ws)) {
        if (!vs_has(state.active, w)) continue;
        double sum = point.y(w, 1);
        bool emitted = false;
        for (int i = 2; i <= m && !emitted; ++i) {
          sum += point.y(w, i);
          const double x1 = point.x(u1, i);
          const double x2 = point.x(u2, i);
          if (!is_fractional(x1) || !is_fractional(x2)) continue;
          for (int k = 1; k <= i; ++k) {
            if (!is_fractional(point.y(w, k))) continue;
            double total = sum + x1 + x2;
            for (int v : vs_list(nun)) total += point.y(v, k);
            if (total > 2.2) {
              cuts.push_back(make_type2(inst, u1, u2, w, i, k));
              state.active &= ~vbit(w);
              emitted = true;
              break;
            }
          }
        }
      }
    }
  return cuts;
}

}  // namespace ggdp
