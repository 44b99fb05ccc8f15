#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ggdp/model.hpp"
#include "ggdp/sequence.hpp"

namespace ggdp {

// A linear inequality  pi^x x + pi^y y <= pi0  over the (x,y) variable space
// of a model with n vertices and m steps.  Coefficients are integers (every
// family in use has integer coefficients); evaluation over 0/1 points is
// therefore exact in 64-bit arithmetic, and rank computations downstream use
// exact fraction-free integer elimination.
struct Inequality {
  int n = 0;
  int m = 0;
  std::vector<int> coef;  // dense, size 2nm, packed like Model columns
  long long rhs = 0;
  std::string label;

  Inequality() = default;
  Inequality(int n_, int m_) : n(n_), m(m_), coef(2 * n_ * m_, 0) {}

  int ncols() const { return 2 * n * m; }
  void add_x(int u, int i, int c) { coef[idx_x(n, m, u, i)] += c; }
  void add_y(int v, int i, int c) { coef[idx_y(n, m, v, i)] += c; }
  int x(int u, int i) const { return coef[idx_x(n, m, u, i)]; }
  int y(int v, int i) const { return coef[idx_y(n, m, v, i)]; }

  // Nonzero (column, coefficient) pairs, ascending by column.
  std::vector<std::pair<int, int>> nonzeros() const;

  // Exact value of the left-hand side at a 0/1 point given as a bitmask
  // over columns (bit k set  <=>  variable k equals 1).
  long long eval_mask(std::uint64_t pt) const;
  // Left-hand side at a fractional point.
  double eval_point(const Point& pt) const;

  Row to_row() const;  // as a 'L' model row (for appending to relaxations)
};

// The set of all binary feasible points of a model, i.e. the vertex set of
// the polytope studied (its convex hull).  Points are stored as bitmasks,
// which restricts clouds to 2nm <= 64 (the enumerable regime).
struct VertexCloud {
  int n = 0;
  int m = 0;
  std::vector<std::uint64_t> pts;

  int ncols() const { return 2 * n * m; }
  bool empty() const { return pts.empty(); }
  std::size_t size() const { return pts.size(); }
};

// Enumerates the cloud for a formulation (lb, m_override as in
// build_formulation).  Throws if 2nm > 64.
VertexCloud enumerate_cloud(const Instance& inst, Formulation which, int lb = 1,
                            int m_override = 0);

// Affine dimension (affine rank - 1) of a point set, exact.  `stop_at`, when
// nonnegative, stops elimination as soon as the dimension reaches it (used to
// cap tight-set ranks at the cloud dimension; the cap is never below the true
// value because a subset's rank cannot exceed the superset's).  Empty set
// has dimension -1 by convention; the VertexCloud overload throws on an
// empty cloud.
int affine_dimension_of(const std::vector<std::uint64_t>& pts, int ambient,
                        int stop_at = -1);
int affine_dimension(const VertexCloud& cloud);

// dim P3 = m(n - |V1|) + sum_v i(G;C,v) - 1, with V1 = {v : N<v> = V}.
// Requires LB = 1.  Throws SolverBudget-style runtime_error when
// max_step_index exceeds `budget`.
int p3_dimension_formula(const Instance& inst,
                         std::uint64_t budget = kDefaultBudget);

// (V_subset, V_superset):
//   V_subset   = {u : no v has v <| u}  (vertices whose N<u> is contained in
//                 every other closed-open neighborhood),
//   V_superset = {w : no v has w <| v}  (vertices with N<w> = V).
// On twin-free instances each has at most one element.
std::pair<std::vector<int>, std::vector<int>> vsubsets(const Instance& inst);

// ---- inequality families ----------------------------------------------

// Plain step-packing constraint: sum_v y_vi <= 1.
Inequality make_restr1(const Instance& inst, int i);

struct Restr1Strong {
  Inequality ineq;
  // Which strengthening was produced: "1" (plain), "11", "12", or "13".
  std::string variant;
};

// Strongest valid variant of the step-packing constraint, by the case split
// on V_subset / V_superset.  Requires a twin-free instance and 1 <= i <= m.
Restr1Strong make_restr1_strong(const Instance& inst, int i);

// x_ui + sum_{v in N<u>} y_vi <= 1.
Inequality make_restr4(const Instance& inst, int u, int i);

// x_{u,i+1} - x_{u,i} <= 0 for 1 <= i <= m-1.
Inequality make_restr5(const Instance& inst, int u, int i);

Inequality make_nonneg_x(const Instance& inst, int u, int i);  // -x_ui <= 0
Inequality make_nonneg_y(const Instance& inst, int v, int i);  // -y_vi <= 0

struct Nova0 {
  Inequality ineq;
  bool maximal = false;  // facet prediction: every v outside W has w1 <| v
};

// sum_{w in W} y_{w,i+1} - sum_{u in N<w1>} (x_ui - x_{u,i+1}) <= 0,
// for W ordered with w1 not<| w_j for all j >= 2 and 1 <= i <= m-1.
Nova0 make_nova0(const Instance& inst, const std::vector<int>& W, int i);

// N^r<U> = {v : |N<v> ∩ U| = r}.
VertexSet n_r_set(const Instance& inst, const std::vector<int>& U, int r);

// The (i,k,U,N,W,j_1..j_{t+1})-inequality.  All hypotheses are checked and
// violations raise std::invalid_argument naming the failed hypothesis.
Inequality make_supernova(const Instance& inst, int i, int k,
                          const std::vector<int>& U, const std::vector<int>& N,
                          const std::vector<int>& W,
                          const std::vector<int>& js);

// Type I: x_ui + sum_{j<=i} y_wj <= 1, for w in N<u>, 2 <= i <= m.
Inequality make_type1(const Instance& inst, int u, int w, int i);

// Type II: x_{u1 i} + x_{u2 i} + sum_{j<=i} y_wj + sum_{v in N<u1> ∪ N<u2>}
// y_vk <= 2 (coefficient of y_wk is 2), for w in N<u1> ∩ N<u2>.
Inequality make_type2(const Instance& inst, int u1, int u2, int w, int i,
                      int k);

// ---- validity / facetness ----------------------------------------------

// True iff no cloud point violates the inequality.  Parallel sweep.
bool check_valid(const Inequality& iq, const VertexCloud& cloud);
// Serial reference implementation with identical semantics.
bool check_valid_serial(const Inequality& iq, const VertexCloud& cloud);

struct FacetCheck {
  bool is_facet = false;
  int tight_dim = -1;  // affine dimension of the tight points
  int cloud_dim = -1;
  // pi0 >= 0 and pi^y >= 0 (except for -y_vj <= 0 itself) whenever the
  // inequality is reported as a facet.
  bool sanity_ok = true;
};

// Facet test: tight-point affine dimension == cloud dimension - 1.
// `cloud_dim` may be passed in to avoid recomputation (-1 = compute here).
FacetCheck check_facet(const Inequality& iq, const VertexCloud& cloud,
                       int cloud_dim = -1);

// ---- facet predicates (closed-form conditions, exact) --------------------

bool predict_restr1(const Instance& inst, int i);         // plain (1)
bool predict_restr1_strong(const Instance& inst, int i);  // strongest variant
bool predict_restr4(const Instance& inst, int u, int i);
bool predict_restr5(const Instance& inst, int u);  // step-independent
bool predict_nova0(const Instance& inst, const std::vector<int>& W);
bool predict_nova1(const Instance& inst, int i, int u, std::vector<int> N,
                   std::vector<int> W, std::vector<int> js);
bool predict_type1(const Instance& inst, int u, int w, int i);
bool predict_type2(const Instance& inst, int u1, int u2, int w, int i, int k);

// ---- textual inequality descriptions (CLI + dispatch) --------------------

struct IneqSpec {
  std::string kind;  // restr1|restr1_strong|restr4|restr5|nonneg_x|nonneg_y|
                     // nova0|nova1|supernova|type1|type2
  int u = 0, u2 = 0, w = 0, v = 0, i = 0, k = 0;
  std::vector<int> U, N, W, js;
};

// Parses e.g. "type1 u=1 w=2 i=3" or
// "supernova i=3 k=2 U=1,2 N= W=5 j=1,3".
IneqSpec parse_ineq_spec(const std::string& text);
Inequality build_from_spec(const Instance& inst, const IneqSpec& spec);
// Evaluates the closed-form facet condition for the kind; throws for kinds
// without a predicate (supernova with |U| >= 2).
bool predict_facet(const Instance& inst, const IneqSpec& spec);

// ---- predict-vs-check audit ----------------------------------------------

struct AuditRow {
  IneqSpec spec;
  std::string label;
  bool predicted = false;
  bool actual = false;
  bool valid = true;
};

struct AuditResult {
  int checked = 0;
  std::size_t cloud_size = 0;
  int cloud_dim = -1;
  std::vector<AuditRow> disagreements;  // predicted != actual
  std::vector<AuditRow> invalid;        // check_valid failed (never expected)
  bool clean() const { return disagreements.empty() && invalid.empty(); }
};

// Every parameter tuple of every family (nova0 over all dominated subsets;
// type2 over both k = i and k < i unless `skip_type2_lt`) — the exhaustive
// sweep domain shared by the audit and the validity-only checks.
std::vector<IneqSpec> family_tuples(const Instance& inst,
                                    bool skip_type2_lt = false);

// Sweeps family_tuples, checks validity and compares predicate vs exact
// rank on the F1 cloud.
AuditResult audit_families(const Instance& inst, bool skip_type2_lt = false);

// ---- twin lifting ---------------------------------------------------------

// Lifts a valid inequality of P(G;C) to the polytope of the instance
// extended by a twin u_new of u (same step horizon m).  Returns (lift1,
// lift2): lift1 keeps the x-coefficients of u in place and copies pi^y_u
// onto u_new's y-slice; lift2 additionally moves pi^x_u onto u_new.
// Preconditions: pi^x_u >= 0 componentwise; u_new == n+1 (anything <= n
// collides with an existing vertex).
std::pair<Inequality, Inequality> lift_twin(const Inequality& iq,
                                            const Instance& inst, int u,
                                            int u_new);

}  // namespace ggdp
