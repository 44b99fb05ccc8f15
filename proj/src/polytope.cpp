#include "ggdp/polytope.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ggdp/sequence.hpp"

namespace ggdp {

namespace {

using BigInt = boost::multiprecision::cpp_int;

std::string join_ints(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

void require_vertex(const Instance& inst, int v, const char* what) {
  if (v < 1 || v > inst.n)
    throw std::invalid_argument(std::string(what) + ": vertex " +
                                std::to_string(v) + " out of range 1.." +
                                std::to_string(inst.n));
}

}  // namespace

std::vector<std::pair<int, int>> Inequality::nonzeros() const {
  std::vector<std::pair<int, int>> nz;
  for (int k = 0; k < ncols(); ++k)
    if (coef[k] != 0) nz.emplace_back(k, coef[k]);
  return nz;
}

long long Inequality::eval_mask(std::uint64_t pt) const {
  long long lhs = 0;
  for (int k = 0; k < ncols(); ++k)
    if ((pt >> k) & 1) lhs += coef[k];
  return lhs;
}

double Inequality::eval_point(const Point& pt) const {
  double lhs = 0.0;
  for (int k = 0; k < ncols(); ++k)
    if (coef[k] != 0) lhs += coef[k] * pt.vals[k];
  return lhs;
}

Row Inequality::to_row() const {
  Row row;
  row.coef = coef;
  row.rhs = static_cast<int>(rhs);
  row.sense = 'L';
  row.label = label;
  return row;
}

VertexCloud enumerate_cloud(const Instance& inst, Formulation which, int lb,
                            int m_override) {
  Model model = build_formulation(inst, which, lb, m_override);
  VertexCloud cloud;
  cloud.n = inst.n;
  cloud.m = model.m;
  cloud.pts = enumerate_solutions(model);
  return cloud;
}

int affine_dimension_of(const std::vector<std::uint64_t>& pts, int ambient,
                        int stop_at) {
  if (pts.empty()) return -1;
  int target = ambient;
  if (stop_at >= 0 && stop_at < target) target = stop_at;
  const std::uint64_t base = pts[0];
  std::vector<std::vector<BigInt>> rows;  // fraction-free eliminated rows
  std::vector<int> pivots;
  int dim = 0;
  std::vector<BigInt> v(ambient);
  for (std::size_t s = 1; s < pts.size() && dim < target; ++s) {
    const std::uint64_t diff = pts[s] ^ base;
    if (diff == 0) continue;
    for (int j = 0; j < ambient; ++j) {
      if ((diff >> j) & 1)
        v[j] = ((pts[s] >> j) & 1) ? 1 : -1;
      else
        v[j] = 0;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const int pc = pivots[r];
      if (v[pc] == 0) continue;
      const BigInt f = v[pc];
      const BigInt g = rows[r][pc];
      for (int j = 0; j < ambient; ++j) v[j] = v[j] * g - rows[r][j] * f;
    }
    int pc = -1;
    for (int j = 0; j < ambient; ++j)
      if (v[j] != 0) {
        pc = j;
        break;
      }
    if (pc < 0) continue;
    BigInt g = 0;
    for (int j = 0; j < ambient; ++j)
      if (v[j] != 0) g = boost::multiprecision::gcd(g, abs(v[j]));
    if (g > 1)
      for (int j = 0; j < ambient; ++j) v[j] /= g;
    rows.push_back(v);
    pivots.push_back(pc);
    ++dim;
  }
  return dim;
}

int affine_dimension(const VertexCloud& cloud) {
  if (cloud.empty()) throw std::invalid_argument("affine_dimension: empty cloud");
  return affine_dimension_of(cloud.pts, cloud.ncols());
}

int p3_dimension_formula(const Instance& inst, std::uint64_t budget) {
  const int n = inst.n;
  const int m = upper_bound_m(inst);
  const VertexSet all = vs_all(n);
  int v1 = 0;
  long long isum = 0;
  for (int v = 1; v <= n; ++v) {
    if (inst.nb(v) == all) ++v1;
    GrundyResult r = max_step_index(inst, v, budget);
    if (!r.solved)
      throw std::runtime_error("p3_dimension_formula: solver budget exceeded");
    isum += r.value;
  }
  return static_cast<int>(static_cast<long long>(m) * (n - v1) + isum - 1);
}

std::pair<std::vector<int>, std::vector<int>> vsubsets(const Instance& inst) {
  std::vector<int> sub, sup;
  for (int u = 1; u <= inst.n; ++u) {
    bool is_sub = true, is_sup = true;
    for (int v = 1; v <= inst.n; ++v) {
      if (v == u) continue;
      if (precedes(inst, v, u)) is_sub = false;
      if (precedes(inst, u, v)) is_sup = false;
    }
    if (is_sub) sub.push_back(u);
    if (is_sup) sup.push_back(u);
  }
  return {sub, sup};
}

Inequality make_restr1(const Instance& inst, int i) {
  const int m = upper_bound_m(inst);
  if (i < 1 || i > m) throw std::invalid_argument("restr1: i out of range");
  Inequality iq(inst.n, m);
  for (int v = 1; v <= inst.n; ++v) iq.add_y(v, i, 1);
  iq.rhs = 1;
  iq.label = "restr1 i=" + std::to_string(i);
  return iq;
}

Restr1Strong make_restr1_strong(const Instance& inst, int i) {
  const int m = upper_bound_m(inst);
  if (i < 1 || i > m) throw std::invalid_argument("restr1_strong: i out of range");
  if (!is_twin_free(inst))
    throw std::invalid_argument("restr1_strong: instance must be twin-free");
  auto [vsub, vsup] = vsubsets(inst);
  Inequality iq(inst.n, m);
  for (int v = 1; v <= inst.n; ++v) iq.add_y(v, i, 1);
  iq.rhs = 1;
  iq.label = "restr1_strong i=" + std::to_string(i);
  std::string variant;
  if ((vsub.empty() || i == m) && vsup.empty()) {
    variant = "1";
  } else if (!vsub.empty() && i < m && vsup.empty()) {
    const int u = vsub.front();
    for (int j = i + 1; j <= m; ++j) iq.add_y(u, j, 1);
    variant = "11";
  } else if ((vsub.empty() || i == m) && !vsup.empty()) {
    const int w = vsup.front();
    iq.add_x(w, i, 1);
    for (int j = 1; j < i; ++j) iq.add_y(w, j, 1);
    variant = "12";
  } else {
    const int u = vsub.front();
    const int w = vsup.front();
    iq.add_x(w, m, 1);
    for (int j = 1; j < i; ++j) iq.add_y(w, j, 1);
    for (int j = i + 1; j <= m; ++j) iq.add_y(u, j, 1);
    variant = "13";
  }
  return {std::move(iq), variant};
}

Inequality make_restr4(const Instance& inst, int u, int i) {
  const int m = upper_bound_m(inst);
  require_vertex(inst, u, "restr4");
  if (i < 1 || i > m) throw std::invalid_argument("restr4: i out of range");
  Inequality iq(inst.n, m);
  iq.add_x(u, i, 1);
  for (int v : vs_list(inst.nb(u))) iq.add_y(v, i, 1);
  iq.rhs = 1;
  iq.label = "restr4 u=" + std::to_string(u) + " i=" + std::to_string(i);
  return iq;
}

Inequality make_restr5(const Instance& inst, int u, int i) {
  const int m = upper_bound_m(inst);
  require_vertex(inst, u, "restr5");
  if (i < 1 || i > m - 1)
    throw std::invalid_argument("restr5: i must satisfy 1 <= i <= m-1");
  Inequality iq(inst.n, m);
  iq.add_x(u, i + 1, 1);
  iq.add_x(u, i, -1);
  iq.rhs = 0;
  iq.label = "restr5 u=" + std::to_string(u) + " i=" + std::to_string(i);
  return iq;
}

Inequality make_nonneg_x(const Instance& inst, int u, int i) {
  const int m = upper_bound_m(inst);
  require_vertex(inst, u, "nonneg_x");
  if (i < 1 || i > m) throw std::invalid_argument("nonneg_x: i out of range");
  Inequality iq(inst.n, m);
  iq.add_x(u, i, -1);
  iq.rhs = 0;
  iq.label = "nonneg_x u=" + std::to_string(u) + " i=" + std::to_string(i);
  return iq;
}

Inequality make_nonneg_y(const Instance& inst, int v, int i) {
  const int m = upper_bound_m(inst);
  require_vertex(inst, v, "nonneg_y");
  if (i < 1 || i > m) throw std::invalid_argument("nonneg_y: i out of range");
  Inequality iq(inst.n, m);
  iq.add_y(v, i, -1);
  iq.rhs = 0;
  iq.label = "nonneg_y v=" + std::to_string(v) + " i=" + std::to_string(i);
  return iq;
}

Nova0 make_nova0(const Instance& inst, const std::vector<int>& W, int i) {
  const int m = upper_bound_m(inst);
  if (W.empty()) throw std::invalid_argument("nova0: W must be nonempty");
  for (int w : W) require_vertex(inst, w, "nova0");
  if (std::set<int>(W.begin(), W.end()).size() != W.size())
    throw std::invalid_argument("nova0: W has repeated vertices");
  if (i < 1 || i > m - 1)
    throw std::invalid_argument("nova0: i must satisfy 1 <= i <= m-1");
  const int w1 = W.front();
  for (std::size_t j = 1; j < W.size(); ++j)
    if (precedes(inst, w1, W[j]))
      throw std::invalid_argument(
          "nova0: W property violated: w1 <| w" + std::to_string(j + 1));
  Nova0 out;
  Inequality iq(inst.n, m);
  for (int w : W) iq.add_y(w, i + 1, 1);
  for (int u : vs_list(inst.nb(w1))) {
    iq.add_x(u, i, -1);
    iq.add_x(u, i + 1, 1);
  }
  iq.rhs = 0;
  iq.label = "nova0 W=" + join_ints(W) + " i=" + std::to_string(i);
  out.ineq = std::move(iq);
  out.maximal = predict_nova0(inst, W);
  return out;
}

VertexSet n_r_set(const Instance& inst, const std::vector<int>& U, int r) {
  if (U.empty()) throw std::invalid_argument("n_r_set: U must be nonempty");
  if (r < 1 || r > static_cast<int>(U.size()))
    throw std::invalid_argument("n_r_set: r must satisfy 1 <= r <= |U|");
  VertexSet uset = 0;
  for (int u : U) {
    require_vertex(inst, u, "n_r_set");
    uset |= vbit(u);
  }
  VertexSet out = 0;
  for (int v = 1; v <= inst.n; ++v)
    if (vs_card(inst.nb(v) & uset) == r) out |= vbit(v);
  return out;
}

Inequality make_supernova(const Instance& inst, int i, int k,
                          const std::vector<int>& U, const std::vector<int>& N,
                          const std::vector<int>& W,
                          const std::vector<int>& js) {
  const int m = upper_bound_m(inst);
  const int p = static_cast<int>(U.size());
  if (i < 2 || i > m)
    throw std::invalid_argument("supernova: need 2 <= i <= m");
  if (k < 1 || k > i) throw std::invalid_argument("supernova: need 1 <= k <= i");
  if (U.empty()) throw std::invalid_argument("supernova: U must be nonempty");
  for (int u : U) require_vertex(inst, u, "supernova");
  if (std::set<int>(U.begin(), U.end()).size() != U.size())
    throw std::invalid_argument("supernova: U has repeated vertices");
  const VertexSet np = n_r_set(inst, U, p);
  VertexSet nset = 0;
  for (int v : N) {
    require_vertex(inst, v, "supernova");
    nset |= vbit(v);
  }
  if ((nset & ~np) != 0)
    throw std::invalid_argument("supernova: N must be a subset of N^p<U>");
  if (W.empty()) throw std::invalid_argument("supernova: W must be nonempty");
  for (int w : W) require_vertex(inst, w, "supernova");
  if (std::set<int>(W.begin(), W.end()).size() != W.size())
    throw std::invalid_argument("supernova: W has repeated vertices");
  for (int w : W)
    if (!vs_has(np, w) || vs_has(nset, w))
      throw std::invalid_argument(
          "supernova: W must be a subset of N^p<U> \\ N");
  const int t = static_cast<int>(W.size());
  for (int r = 0; r + 1 < t; ++r)
    if (precedes(inst, W[r], W[r + 1]))
      throw std::invalid_argument("supernova: H1 violated: w" +
                                  std::to_string(r + 1) + " <| w" +
                                  std::to_string(r + 2));
  for (int v : N)
    if (precedes(inst, W.back(), v))
      throw std::invalid_argument("supernova: H2 violated: w_t <| " +
                                  std::to_string(v));
  if (static_cast<int>(js.size()) != t + 1)
    throw std::invalid_argument("supernova: need exactly t+1 step indices j");
  if (js.front() != 1) throw std::invalid_argument("supernova: j_1 must be 1");
  if (js.back() != i) throw std::invalid_argument("supernova: j_{t+1} must be i");
  for (int r = 0; r < t; ++r)
    if (js[r] > js[r + 1])
      throw std::invalid_argument("supernova: j must be non-decreasing");

  Inequality iq(inst.n, m);
  for (int u : U) iq.add_x(u, i, 1);
  for (int v : N) iq.add_y(v, i, 1);
  for (int r = 0; r < t; ++r)
    for (int j = js[r]; j <= js[r + 1]; ++j) iq.add_y(W[r], j, 1);
  if (p - 1 > 0)
    for (int v : vs_list(np)) iq.add_y(v, k, p - 1);
  for (int q = 1; q < p; ++q)
    for (int v : vs_list(n_r_set(inst, U, q))) iq.add_y(v, k, q);
  iq.rhs = p;
  iq.label = "supernova i=" + std::to_string(i) + " k=" + std::to_string(k) +
             " U=" + join_ints(U) + " N=" + join_ints(N) +
             " W=" + join_ints(W) + " j=" + join_ints(js);
  return iq;
}

Inequality make_type1(const Instance& inst, int u, int w, int i) {
  const int m = upper_bound_m(inst);
  require_vertex(inst, u, "type1");
  require_vertex(inst, w, "type1");
  if (!vs_has(inst.nb(u), w))
    throw std::invalid_argument("type1: w must belong to N<u>");
  if (i < 2 || i > m) throw std::invalid_argument("type1: need 2 <= i <= m");
  Inequality iq = make_supernova(inst, i, i, {u}, {}, {w}, {1, i});
  iq.label = "type1 u=" + std::to_string(u) + " w=" + std::to_string(w) +
             " i=" + std::to_string(i);
  return iq;
}

Inequality make_type2(const Instance& inst, int u1, int u2, int w, int i,
                      int k) {
  const int m = upper_bound_m(inst);
  require_vertex(inst, u1, "type2");
  require_vertex(inst, u2, "type2");
  require_vertex(inst, w, "type2");
  if (u1 == u2) throw std::invalid_argument("type2: u1 and u2 must differ");
  if (!vs_has(inst.nb(u1) & inst.nb(u2), w))
    throw std::invalid_argument("type2: w must belong to N<u1> ∩ N<u2>");
  if (i < 2 || i > m) throw std::invalid_argument("type2: need 2 <= i <= m");
  if (k < 1 || k > i) throw std::invalid_argument("type2: need 1 <= k <= i");
  Inequality iq = make_supernova(inst, i, k, {u1, u2}, {}, {w}, {1, i});
  iq.label = "type2 u1=" + std::to_string(u1) + " u2=" + std::to_string(u2) +
             " w=" + std::to_string(w) + " i=" + std::to_string(i) +
             " k=" + std::to_string(k);
  return iq;
}

bool check_valid_serial(const Inequality& iq, const VertexCloud& cloud) {
  const auto nz = iq.nonzeros();
  for (std::uint64_t pt : cloud.pts) {
    long long lhs = 0;
    for (const auto& [col, c] : nz)
      if ((pt >> col) & 1) lhs += c;
    if (lhs > iq.rhs) return false;
  }
  return true;
}

bool check_valid(const Inequality& iq, const VertexCloud& cloud) {
  const auto nz = iq.nonzeros();
  const long count = static_cast<long>(cloud.pts.size());
  bool ok = true;
#ifdef GGDP_HAVE_OPENMP
#pragma omp parallel for schedule(static) reduction(&& : ok)
#endif
  for (long idx = 0; idx < count; ++idx) {
    const std::uint64_t pt = cloud.pts[idx];
    long long lhs = 0;
    for (const auto& [col, c] : nz)
      if ((pt >> col) & 1) lhs += c;
    ok = ok && (lhs <= iq.rhs);
  }
  return ok;
}

namespace {

// -y_vj <= 0 exactly: rhs 0 and a single -1 coefficient in the y block.
bool is_nonneg_y_form(const Inequality& iq) {
  if (iq.rhs != 0) return false;
  const auto nz = iq.nonzeros();
  return nz.size() == 1 && nz[0].second == -1 &&
         nz[0].first >= iq.n * iq.m;
}

}  // namespace

FacetCheck check_facet(const Inequality& iq, const VertexCloud& cloud,
                       int cloud_dim) {
  if (cloud.empty()) throw std::invalid_argument("check_facet: empty cloud");
  FacetCheck out;
  out.cloud_dim = cloud_dim >= 0 ? cloud_dim : affine_dimension(cloud);
  const auto nz = iq.nonzeros();
  std::vector<std::uint64_t> tight;
  for (std::uint64_t pt : cloud.pts) {
    long long lhs = 0;
    for (const auto& [col, c] : nz)
      if ((pt >> col) & 1) lhs += c;
    if (lhs == iq.rhs) tight.push_back(pt);
  }
  out.tight_dim = tight.empty() ? -1
                                : affine_dimension_of(tight, cloud.ncols(),
                                                      out.cloud_dim);
  out.is_facet = out.tight_dim == out.cloud_dim - 1;
  if (out.is_facet) {
    bool ynn = true;
    for (int kcol = iq.n * iq.m; kcol < iq.ncols(); ++kcol)
      if (iq.coef[kcol] < 0) ynn = false;
    out.sanity_ok = iq.rhs >= 0 && (ynn || is_nonneg_y_form(iq));
  }
  return out;
}

bool predict_restr1(const Instance& inst, int i) {
  const int m = upper_bound_m(inst);
  auto [vsub, vsup] = vsubsets(inst);
  return (vsub.empty() || i == m) && vsup.empty();
}

bool predict_restr1_strong(const Instance& inst, int i) {
  const int m = upper_bound_m(inst);
  auto [vsub, vsup] = vsubsets(inst);
  (void)vsup;
  // The strongest variant is a facet exactly when the case split lands on
  // the plain constraint or its x-augmented form — i.e. unless both V sets
  // are nonempty with i < m.
  return vsub.empty() || i == m;
}

bool predict_restr4(const Instance& inst, int u, int i) {
  if (i == 1) return true;
  const auto nu = vs_list(inst.nb(u));
  for (int v : nu) {
    bool ok = false;
    for (int w : nu)
      if (w != v && precedes(inst, v, w)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

bool predict_restr5(const Instance& inst, int u) {
  for (int v = 1; v <= inst.n; ++v)
    if (inst.nb(v) == vbit(u)) return false;
  return true;
}

bool predict_nova0(const Instance& inst, const std::vector<int>& W) {
  VertexSet wset = 0;
  for (int w : W) wset |= vbit(w);
  const int w1 = W.front();
  for (int v = 1; v <= inst.n; ++v)
    if (!vs_has(wset, v) && !precedes(inst, w1, v)) return false;
  return true;
}

bool predict_nova1(const Instance& inst, int i, int u, std::vector<int> N,
                   std::vector<int> W, std::vector<int> js) {
  (void)i;  // the step index is encoded in js.back(); kept for API symmetry
  // Normalization: ensure j_t < j_{t+1} by folding the trailing stalled part
  // of the chain into N (the folded inequality has identical coefficients).
  {
    const int t = static_cast<int>(W.size());
    int r = -1;
    for (int s = 0; s < t; ++s)
      if (js[s] < js[s + 1]) r = s;
    if (r < 0) throw std::invalid_argument("nova1: no strict step increase");
    N.insert(N.end(), W.begin() + r + 1, W.end());
    W.resize(r + 1);
    js.resize(r + 2);
  }
  const int t = static_cast<int>(W.size());
  const int wt = W.back();
  VertexSet nset = 0, wset = 0;
  for (int v : N) nset |= vbit(v);
  for (int w : W) wset |= vbit(w);
  const bool h3 = !N.empty() || inst.nb(wt) != vbit(u);
  if (!h3) return false;
  for (int v : vs_list(inst.nb(u) & ~nset & ~wset)) {
    bool any_strict = false, any_inter = false;
    for (int r = 0; r < t; ++r) {
      if (precedes(inst, W[r], v) && precedes(inst, v, W[r])) {
        any_inter = true;
        if (js[r] < js[r + 1]) any_strict = true;
      }
    }
    if (!any_inter || !any_strict) return false;
  }
  return true;
}

bool predict_type1(const Instance& inst, int u, int w, int i) {
  return predict_nova1(inst, i, u, {}, {w}, {1, i});
}

bool predict_type2(const Instance& inst, int u1, int u2, int w, int i, int k) {
  const VertexSet n1 = inst.nb(u1), n2 = inst.nb(u2);
  const VertexSet ncap = n1 & n2, ncup = n1 | n2;
  for (int v : vs_list(ncap & ~vbit(w)))
    if (!precedes(inst, v, w) || !precedes(inst, w, v)) return false;  // H1
  const std::pair<int, int> orders[2] = {{u1, u2}, {u2, u1}};
  if (k == i) {
    for (auto [ur, urb] : orders) {  // H2
      bool any = false;
      for (int v : vs_list(inst.nb(ur) & ~inst.nb(urb)))
        if (precedes(inst, w, v)) {
          any = true;
          break;
        }
      if (!any) return false;
    }
    return true;
  }
  // H3, required whenever k < i.
  for (int v : vs_list(ncup & ~ncap)) {
    bool ok = precedes(inst, w, v);
    if (!ok)
      for (int xv : vs_list(ncup & ~ncap & ~vbit(v))) {
        if (vs_card(inst.nb(v) & inst.nb(xv) & (vbit(u1) | vbit(u2))) == 1 &&
            precedes(inst, xv, v)) {
          ok = true;
          break;
        }
      }
    if (!ok) return false;
  }
  if (k == 1) {
    for (auto [ur, urb] : orders) {  // H4
      bool any = false;
      for (int z : vs_list(inst.nb(ur) & ~inst.nb(urb)))
        if ((inst.nb(w) & ~(vbit(urb) | inst.nb(z))) != 0) {
          any = true;
          break;
        }
      if (!any) return false;
    }
    return true;
  }
  // 1 < k < i.
  bool h5 = false;
  for (int v : vs_list(ncup & ~vbit(w)))
    if (precedes(inst, w, v) &&
        (inst.nb(w) & ~(vbit(u1) | vbit(u2) | inst.nb(v))) != 0) {
      h5 = true;
      break;
    }
  if (!h5) return false;
  for (auto [ur, urb] : orders) {  // H6
    bool a1 = false, a2 = false, b = false;
    for (int vr : vs_list(inst.nb(ur) & ~inst.nb(urb))) {
      if (precedes(inst, w, vr)) a1 = true;
      if ((inst.nb(w) & ~(vbit(urb) | inst.nb(vr))) != 0) b = true;
    }
    for (int vpr : vs_list(inst.nb(urb) & ~vbit(w)))
      if (precedes(inst, w, vpr)) {
        a2 = true;
        break;
      }
    if (!((a1 && a2) || b)) return false;
  }
  return true;
}

IneqSpec parse_ineq_spec(const std::string& text) {
  std::istringstream in(text);
  IneqSpec spec;
  if (!(in >> spec.kind))
    throw std::invalid_argument("inequality spec: missing kind");
  static const std::vector<std::string> kinds = {
      "restr1", "restr1_strong", "restr4",    "restr5", "nonneg_x",
      "nonneg_y", "nova0",       "nova1",     "supernova", "type1",
      "type2"};
  if (std::find(kinds.begin(), kinds.end(), spec.kind) == kinds.end())
    throw std::invalid_argument("inequality spec: unknown kind '" + spec.kind +
                                "'");
  auto parse_list = [](const std::string& s) {
    std::vector<int> out;
    std::string item;
    std::istringstream ls(s);
    while (std::getline(ls, item, ','))
      if (!item.empty()) out.push_back(std::stoi(item));
    return out;
  };
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("inequality spec: expected key=value, got '" +
                                  tok + "'");
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    try {
      if (key == "u") spec.u = std::stoi(val);
      else if (key == "u1") spec.u = std::stoi(val);
      else if (key == "u2") spec.u2 = std::stoi(val);
      else if (key == "w") spec.w = std::stoi(val);
      else if (key == "v") spec.v = std::stoi(val);
      else if (key == "i") spec.i = std::stoi(val);
      else if (key == "k") spec.k = std::stoi(val);
      else if (key == "U") spec.U = parse_list(val);
      else if (key == "N") spec.N = parse_list(val);
      else if (key == "W") spec.W = parse_list(val);
      else if (key == "j" || key == "js") spec.js = parse_list(val);
      else
        throw std::invalid_argument("inequality spec: unknown key '" + key +
                                    "'");
    } catch (const std::logic_error& e) {
      if (std::string(e.what()).rfind("inequality spec", 0) == 0) throw;
      throw std::invalid_argument("inequality spec: bad value for '" + key +
                                  "'");
    }
  }
  return spec;
}

Inequality build_from_spec(const Instance& inst, const IneqSpec& spec) {
  if (spec.kind == "restr1") return make_restr1(inst, spec.i);
  if (spec.kind == "restr1_strong")
    return make_restr1_strong(inst, spec.i).ineq;
  if (spec.kind == "restr4") return make_restr4(inst, spec.u, spec.i);
  if (spec.kind == "restr5") return make_restr5(inst, spec.u, spec.i);
  if (spec.kind == "nonneg_x") return make_nonneg_x(inst, spec.u, spec.i);
  if (spec.kind == "nonneg_y")
    return make_nonneg_y(inst, spec.v ? spec.v : spec.u, spec.i);
  if (spec.kind == "nova0") return make_nova0(inst, spec.W, spec.i).ineq;
  if (spec.kind == "nova1")
    return make_supernova(inst, spec.i, spec.i, {spec.u}, spec.N, spec.W,
                          spec.js);
  if (spec.kind == "supernova")
    return make_supernova(inst, spec.i, spec.k, spec.U, spec.N, spec.W,
                          spec.js);
  if (spec.kind == "type1") return make_type1(inst, spec.u, spec.w, spec.i);
  if (spec.kind == "type2")
    return make_type2(inst, spec.u, spec.u2, spec.w, spec.i, spec.k);
  throw std::invalid_argument("build_from_spec: unknown kind '" + spec.kind +
                              "'");
}

bool predict_facet(const Instance& inst, const IneqSpec& spec) {
  const int m = upper_bound_m(inst);
  if (spec.kind == "restr1") return predict_restr1(inst, spec.i);
  if (spec.kind == "restr1_strong") return predict_restr1_strong(inst, spec.i);
  if (spec.kind == "restr4") return predict_restr4(inst, spec.u, spec.i);
  if (spec.kind == "restr5") return predict_restr5(inst, spec.u);
  if (spec.kind == "nonneg_x") return spec.i == m;
  if (spec.kind == "nonneg_y") return true;
  if (spec.kind == "nova0") return predict_nova0(inst, spec.W);
  if (spec.kind == "nova1")
    return predict_nova1(inst, spec.i, spec.u, spec.N, spec.W, spec.js);
  if (spec.kind == "supernova" && spec.U.size() == 1)
    return predict_nova1(inst, spec.i, spec.U.front(), spec.N, spec.W,
                         spec.js);
  if (spec.kind == "type1")
    return predict_type1(inst, spec.u, spec.w, spec.i);
  if (spec.kind == "type2")
    return predict_type2(inst, spec.u, spec.u2, spec.w, spec.i, spec.k);
  throw std::invalid_argument("predict_facet: unsupported kind '" + spec.kind +
                              "'");
}

std::vector<IneqSpec> family_tuples(const Instance& inst, bool skip_type2_lt) {
  const int n = inst.n;
  const int m = upper_bound_m(inst);
  std::vector<IneqSpec> out;
  auto push = [&out](IneqSpec spec) { out.push_back(std::move(spec)); };
  for (int u = 1; u <= n; ++u)
    for (int i = 1; i <= m; ++i) {
      IneqSpec a;
      a.kind = "nonneg_x"; a.u = u; a.i = i;
      push(a);
      IneqSpec b;
      b.kind = "nonneg_y"; b.v = u; b.i = i;
      push(b);
      IneqSpec c;
      c.kind = "restr4"; c.u = u; c.i = i;
      push(c);
    }
  for (int i = 1; i <= m; ++i) {
    IneqSpec a;
    a.kind = "restr1"; a.i = i;
    push(a);
    IneqSpec b;
    b.kind = "restr1_strong"; b.i = i;
    push(b);
  }
  for (int u = 1; u <= n; ++u)
    for (int i = 1; i < m; ++i) {
      IneqSpec a;
      a.kind = "restr5"; a.u = u; a.i = i;
      push(a);
    }
  for (int w1 = 1; w1 <= n; ++w1) {
    std::vector<int> dom;
    for (int v = 1; v <= n; ++v)
      if (v != w1 && !precedes(inst, w1, v)) dom.push_back(v);
    const int dn = static_cast<int>(dom.size());
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << dn); ++sub) {
      std::vector<int> W{w1};
      for (int b = 0; b < dn; ++b)
        if ((sub >> b) & 1) W.push_back(dom[b]);
      for (int i = 1; i < m; ++i) {
        IneqSpec a;
        a.kind = "nova0"; a.W = W; a.i = i;
        push(a);
      }
    }
  }
  for (int u = 1; u <= n; ++u)
    for (int w : vs_list(inst.nb(u)))
      for (int i = 2; i <= m; ++i) {
        IneqSpec a;
        a.kind = "type1"; a.u = u; a.w = w; a.i = i;
        push(a);
      }
  for (int u1 = 1; u1 <= n; ++u1)
    for (int u2 = u1 + 1; u2 <= n; ++u2)
      for (int w : vs_list(inst.nb(u1) & inst.nb(u2)))
        for (int i = 2; i <= m; ++i)
          for (int k = 1; k <= i; ++k) {
            if (skip_type2_lt && k < i) continue;
            IneqSpec a;
            a.kind = "type2"; a.u = u1; a.u2 = u2; a.w = w; a.i = i; a.k = k;
            push(a);
          }
  return out;
}

AuditResult audit_families(const Instance& inst, bool skip_type2_lt) {
  const VertexCloud cloud = enumerate_cloud(inst, Formulation::F1);
  const int cd = affine_dimension(cloud);
  const auto tuples = family_tuples(inst, skip_type2_lt);
  AuditResult res;
  res.cloud_size = cloud.size();
  res.cloud_dim = cd;
  res.checked = static_cast<int>(tuples.size());
  const long count = static_cast<long>(tuples.size());
#ifdef GGDP_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long idx = 0; idx < count; ++idx) {
    const IneqSpec& spec = tuples[idx];
    const Inequality iq = build_from_spec(inst, spec);
    const bool valid = check_valid_serial(iq, cloud);
    const FacetCheck fc = check_facet(iq, cloud, cd);
    const bool want = predict_facet(inst, spec);
    if (valid && want == fc.is_facet && fc.sanity_ok) continue;
    AuditRow row{spec, iq.label, want, fc.is_facet, valid};
#ifdef GGDP_HAVE_OPENMP
#pragma omp critical(ggdp_audit_rows)
#endif
    {
      if (!valid || !fc.sanity_ok) res.invalid.push_back(row);
      if (want != fc.is_facet) res.disagreements.push_back(row);
    }
  }
  return res;
}

std::pair<Inequality, Inequality> lift_twin(const Inequality& iq,
                                            const Instance& inst, int u,
                                            int u_new) {
  require_vertex(inst, u, "lift_twin");
  const int n = inst.n, m = iq.m;
  if (iq.n != n)
    throw std::invalid_argument("lift_twin: inequality/instance size mismatch");
  if (u_new >= 1 && u_new <= n)
    throw std::invalid_argument("lift_twin: u_new collides with vertex " +
                                std::to_string(u_new));
  if (u_new != n + 1)
    throw std::invalid_argument("lift_twin: the twin id must be n+1");
  if (n + 1 > kMaxVertices)
    throw std::invalid_argument("lift_twin: extended instance too large");
  for (int i = 1; i <= m; ++i)
    if (iq.x(u, i) < 0)
      throw std::invalid_argument(
          "lift_twin: negative pi^x_u component at i=" + std::to_string(i));
  Inequality lift1(n + 1, m), lift2(n + 1, m);
  for (int v = 1; v <= n; ++v)
    for (int i = 1; i <= m; ++i) {
      lift1.add_x(v, i, iq.x(v, i));
      lift1.add_y(v, i, iq.y(v, i));
      lift2.add_x(v, i, v == u ? 0 : iq.x(v, i));
      lift2.add_y(v, i, iq.y(v, i));
    }
  for (int i = 1; i <= m; ++i) {
    lift1.add_y(u_new, i, iq.y(u, i));
    lift2.add_x(u_new, i, iq.x(u, i));
    lift2.add_y(u_new, i, iq.y(u, i));
  }
  lift1.rhs = iq.rhs;
  lift2.rhs = iq.rhs;
  lift1.label = "lift1(" + iq.label + ")";
  lift2.label = "lift2(" + iq.label + ")";
  return {std::move(lift1), std::move(lift2)};
}

}  // namespace ggdp
