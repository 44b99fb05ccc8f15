#include "ggdp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ggdp {

namespace {

constexpr double kFeasTol = 1e-7;
constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense bounded-variable primal simplex working state.  Columns are
// [structural | slack | artificial]; the tableau holds B^{-1}A and is
// updated in place on every pivot.
struct Simplex {
  int rows = 0, cols = 0;
  std::vector<std::vector<double>> tab;  // rows x cols
  std::vector<double> lo, hi;            // per column
  std::vector<double> cost;              // current phase objective (maximize)
  std::vector<double> d;                 // reduced costs
  std::vector<int> basis;                // basis[r] = column basic in row r
  std::vector<char> in_basis;            // per column
  std::vector<char> at_upper;            // nonbasic bound status
  std::vector<double> xb;                // basic values per row
  bool bland = false;
  int degenerate_run = 0;
  int iterations = 0;

  double nb_value(int j) const { return at_upper[j] ? hi[j] : lo[j]; }

  void compute_reduced_costs() {
    d = cost;
    for (int r = 0; r < rows; ++r) {
      const double cb = cost[basis[r]];
      if (cb == 0.0) continue;
      for (int j = 0; j < cols; ++j) d[j] -= cb * tab[r][j];
    }
    for (int j = 0; j < cols; ++j)
      if (in_basis[j]) d[j] = 0.0;
  }

  int pick_entering() const {
    int best = -1;
    double best_score = kCostTol;
    for (int j = 0; j < cols; ++j) {
      if (in_basis[j] || lo[j] == hi[j]) continue;
      const double dj = d[j];
      const bool eligible = at_upper[j] ? dj < -kCostTol : dj > kCostTol;
      if (!eligible) continue;
      if (bland) return j;
      if (std::abs(dj) > best_score) {
        best_score = std::abs(dj);
        best = j;
      }
    }
    return best;
  }

  // One simplex step for the current phase objective.
  enum class Step { Optimal, Moved, Unbounded };
  Step step() {
    const int e = pick_entering();
    if (e < 0) return Step::Optimal;
    const double sigma = at_upper[e] ? -1.0 : 1.0;
    double t_best = hi[e] - lo[e];  // bound flip
    int leave_row = -1;
    bool leave_to_upper = false;
    for (int r = 0; r < rows; ++r) {
      const double delta = -sigma * tab[r][e];  // d(xb_r)/dt
      if (std::abs(delta) <= kPivotTol) continue;
      const int b = basis[r];
      double t_r = kInf;
      bool to_upper = false;
      if (delta < 0.0) {
        t_r = (xb[r] - lo[b]) / (-delta);
      } else {
        if (hi[b] == kInf) continue;
        t_r = (hi[b] - xb[r]) / delta;
        to_upper = true;
      }
      if (t_r < -1e-12) t_r = 0.0;
      const bool better =
          t_r < t_best - 1e-12 ||
          (t_r < t_best + 1e-12 && leave_row >= 0 &&
           (bland ? basis[r] < basis[leave_row]
                  : std::abs(tab[r][e]) > std::abs(tab[leave_row][e])));
      if (better) {
        t_best = t_r;
        leave_row = r;
        leave_to_upper = to_upper;
      }
    }
    if (t_best == kInf) return Step::Unbounded;
    ++iterations;
    if (t_best < 1e-12)
      ++degenerate_run;
    else
      degenerate_run = 0;
    if (degenerate_run > 5 * rows) bland = true;
    // Apply the move to the basic values before touching the tableau.
    for (int r = 0; r < rows; ++r) xb[r] += -sigma * tab[r][e] * t_best;
    if (leave_row < 0) {
      at_upper[e] = !at_upper[e];  // bound flip, no basis change
      return Step::Moved;
    }
    const double enter_val = nb_value(e) + sigma * t_best;
    const int leaving = basis[leave_row];
    // Pivot: normalize the row, eliminate the column elsewhere.
    const double piv = tab[leave_row][e];
    for (int j = 0; j < cols; ++j) tab[leave_row][j] /= piv;
    for (int r = 0; r < rows; ++r) {
      if (r == leave_row) continue;
      const double f = tab[r][e];
      if (f == 0.0) continue;
      for (int j = 0; j < cols; ++j) tab[r][j] -= f * tab[leave_row][j];
    }
    {
      const double f = d[e];
      if (f != 0.0)
        for (int j = 0; j < cols; ++j) d[j] -= f * tab[leave_row][j];
    }
    in_basis[leaving] = 0;
    at_upper[leaving] = leave_to_upper;
    in_basis[e] = 1;
    basis[leave_row] = e;
    xb[leave_row] = enter_val;
    d[e] = 0.0;
    return Step::Moved;
  }

  double objective(const std::vector<double>& c) const {
    double obj = 0.0;
    for (int j = 0; j < cols; ++j)
      if (!in_basis[j]) obj += c[j] * nb_value(j);
    for (int r = 0; r < rows; ++r) obj += c[basis[r]] * xb[r];
    return obj;
  }

  double value_of(int j) const {
    if (!in_basis[j]) return nb_value(j);
    for (int r = 0; r < rows; ++r)
      if (basis[r] == j) return xb[r];
    return 0.0;
  }
};

}  // namespace

std::string lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::IterationLimit: return "iteration-limit";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

LinearProgram relax(const Model& model) {
  LinearProgram lp;
  lp.n = model.inst.n;
  lp.m = model.m;
  lp.ncols = model.ncols();
  lp.obj.assign(lp.ncols, 0.0);
  const int nm = lp.n * lp.m;
  for (int k = nm; k < lp.ncols; ++k) lp.obj[k] = 1.0;
  lp.lo.assign(lp.ncols, 0.0);
  lp.hi.assign(lp.ncols, 1.0);
  lp.rows.reserve(model.rows.size());
  for (const Row& row : model.rows) {
    LinearProgram::LpRow r;
    r.coef.assign(row.coef.begin(), row.coef.end());
    r.rhs = row.rhs;
    r.sense = row.sense;
    lp.rows.push_back(std::move(r));
  }
  return lp;
}

LpSolution solve_lp(const LinearProgram& lp) {
  const int nrows = static_cast<int>(lp.rows.size());
  const int nstruct = lp.ncols;
  int nslack = 0;
  for (const auto& row : lp.rows)
    if (row.sense == 'L') ++nslack;

  Simplex sx;
  sx.rows = nrows;
  // Structural + slack columns now; artificials appended as needed.
  sx.cols = nstruct + nslack;
  sx.lo.assign(sx.cols, 0.0);
  sx.hi.assign(sx.cols, kInf);
  for (int j = 0; j < nstruct; ++j) {
    sx.lo[j] = lp.lo[j];
    sx.hi[j] = lp.hi[j];
  }
  sx.tab.assign(nrows, std::vector<double>(sx.cols, 0.0));
  std::vector<int> slack_col(nrows, -1);
  {
    int s = nstruct;
    for (int r = 0; r < nrows; ++r) {
      const auto& row = lp.rows[r];
      for (int j = 0; j < nstruct; ++j) sx.tab[r][j] = row.coef[j];
      if (row.sense == 'L') slack_col[r] = s++;
    }
  }
  sx.basis.assign(nrows, -1);
  sx.xb.assign(nrows, 0.0);
  // All structurals start nonbasic at their lower bound; the residual of
  // row r is then rhs - sum(coef * lo).
  std::vector<double> residual(nrows, 0.0);
  for (int r = 0; r < nrows; ++r) {
    double acc = lp.rows[r].rhs;
    for (int j = 0; j < nstruct; ++j) acc -= lp.rows[r].coef[j] * lp.lo[j];
    residual[r] = acc;
  }
  std::vector<int> artificial_cols;
  for (int r = 0; r < nrows; ++r) {
    if (slack_col[r] >= 0) sx.tab[r][slack_col[r]] = 1.0;
    if (slack_col[r] >= 0 && residual[r] >= 0.0) {
      sx.basis[r] = slack_col[r];
      sx.xb[r] = residual[r];
    } else {
      // Equality row, or <= row whose slack would start negative.
      artificial_cols.push_back(-1);  // placeholder, fixed below
    }
  }
  // Append artificial columns.
  {
    int extra = 0;
    for (int r = 0; r < nrows; ++r)
      if (sx.basis[r] < 0) ++extra;
    const int first_art = sx.cols;
    sx.cols += extra;
    sx.lo.resize(sx.cols, 0.0);
    sx.hi.resize(sx.cols, kInf);
    for (auto& row : sx.tab) row.resize(sx.cols, 0.0);
    artificial_cols.clear();
    int a = first_art;
    for (int r = 0; r < nrows; ++r) {
      if (sx.basis[r] >= 0) continue;
      // The initial tableau must equal B^{-1}A, so every basic column has to
      // be a +1 unit column.  Rows whose residual is negative are negated
      // wholesale (structural and slack coefficients alike) first.
      if (residual[r] < 0.0) {
        for (int j = 0; j < sx.cols; ++j) sx.tab[r][j] = -sx.tab[r][j];
        residual[r] = -residual[r];
      }
      sx.tab[r][a] = 1.0;
      sx.basis[r] = a;
      sx.xb[r] = residual[r];
      artificial_cols.push_back(a);
      ++a;
    }
  }
  sx.in_basis.assign(sx.cols, 0);
  for (int r = 0; r < nrows; ++r) sx.in_basis[sx.basis[r]] = 1;
  sx.at_upper.assign(sx.cols, 0);

  const long long iter_limit = 10000 + 200LL * (nrows + sx.cols);
  LpSolution out;

  auto run_phase = [&](const std::vector<double>& phase_cost) -> LpStatus {
    sx.cost = phase_cost;
    sx.compute_reduced_costs();
    sx.bland = false;
    sx.degenerate_run = 0;
    while (true) {
      if (sx.iterations > iter_limit) return LpStatus::IterationLimit;
      const Simplex::Step s = sx.step();
      if (s == Simplex::Step::Optimal) return LpStatus::Optimal;
      if (s == Simplex::Step::Unbounded) return LpStatus::Unbounded;
    }
  };

  if (!artificial_cols.empty()) {
    std::vector<double> phase1(sx.cols, 0.0);
    for (int a : artificial_cols) phase1[a] = -1.0;  // maximize -sum(a)
    const LpStatus st = run_phase(phase1);
    if (st != LpStatus::Optimal) {
      out.status = st;
      out.iterations = sx.iterations;
      return out;
    }
    double infeas = 0.0;
    for (int a : artificial_cols) infeas += sx.value_of(a);
    if (infeas > kFeasTol) {
      out.status = LpStatus::Infeasible;
      out.iterations = sx.iterations;
      return out;
    }
    for (int a : artificial_cols) sx.hi[a] = 0.0;  // pin artificials at zero
  }

  std::vector<double> phase2(sx.cols, 0.0);
  for (int j = 0; j < nstruct; ++j) phase2[j] = lp.obj[j];
  const LpStatus st = run_phase(phase2);
  out.status = st;
  out.iterations = sx.iterations;
  if (st != LpStatus::Optimal) return out;
  out.objective = sx.objective(phase2);
  out.primal = FractionalPoint(lp.n, lp.m);
  // Hand-built LPs may not carry a model shape; size by the true column count.
  out.primal.vals.assign(nstruct, 0.0);
  for (int j = 0; j < nstruct; ++j) {
    double v = sx.value_of(j);
    v = std::max(lp.lo[j], std::min(lp.hi[j], v));
    out.primal.vals[j] = v;
  }
  return out;
}

RootCutResult root_cut_loop(const Instance& inst, Formulation which,
                            int rounds, bool use_type1, bool use_type2,
                            int lb) {
  if (rounds < 0) throw std::invalid_argument("root_cut_loop: rounds >= 0");
  RootCutResult out;
  Model model = build_formulation(inst, which, lb);
  LinearProgram lp = relax(model);
  LpSolution sol = solve_lp(lp);
  out.final_status = sol.status;
  if (sol.status != LpStatus::Optimal) return out;
  out.bound_history.push_back(sol.objective);
  SeparationState state = precompute(inst);
  for (int round = 0; round < rounds; ++round) {
    std::vector<Inequality> cuts;
    if (use_type1) {
      cuts = separate_type1(inst, state, sol.primal);
    } else {
      state.active = inst.vertices();
    }
    if (use_type2) {
      std::vector<Inequality> more = separate_type2(inst, state, sol.primal);
      cuts.insert(cuts.end(), more.begin(), more.end());
    }
    if (cuts.empty()) break;
    for (const Inequality& cut : cuts) {
      LinearProgram::LpRow row;
      row.coef.assign(cut.coef.begin(), cut.coef.end());
      row.rhs = static_cast<double>(cut.rhs);
      row.sense = 'L';
      lp.rows.push_back(std::move(row));
      out.cuts.push_back(cut);
    }
    out.cuts_added += static_cast<int>(cuts.size());
    sol = solve_lp(lp);
    out.final_status = sol.status;
    if (sol.status != LpStatus::Optimal) break;
    out.bound_history.push_back(sol.objective);
  }
  return out;
}

}  // namespace ggdp
