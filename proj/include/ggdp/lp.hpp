#pragma once

#include <string>
#include <vector>

#include "ggdp/model.hpp"
#include "ggdp/polytope.hpp"
#include "ggdp/separation.hpp"

namespace ggdp {

// Continuous relaxation of a Model: same rows, binary variables relaxed to
// [0,1], objective maximize sum of all y variables.
struct LinearProgram {
  int n = 0, m = 0;  // model shape, for unpacking the primal solution
  int ncols = 0;     // structural columns (2nm)
  std::vector<double> obj;       // per structural column
  std::vector<double> lo, hi;    // structural bounds
  struct LpRow {
    std::vector<double> coef;  // dense over structural columns
    double rhs = 0.0;
    char sense = 'L';  // 'L': <=, 'E': =
  };
  std::vector<LpRow> rows;
};

LinearProgram relax(const Model& model);

enum class LpStatus { Optimal, Infeasible, IterationLimit, Unbounded };

std::string lp_status_name(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  double objective = 0.0;
  FractionalPoint primal;  // structural values, clipped to bounds
  int iterations = 0;
};

// Two-phase bounded-variable primal simplex (variables honor their [lo,hi]
// bounds directly, with nonbasic-at-upper-bound states and bound flips).
// Dantzig pricing, switching permanently to Bland's rule after 5*rows
// consecutive degenerate pivots; feasibility tolerance 1e-7.  The iteration
// limit surfaces as an explicit status, never a silent wrong answer.
LpSolution solve_lp(const LinearProgram& lp);

struct RootCutResult {
  std::vector<double> bound_history;  // optimal objective after each solve
  int cuts_added = 0;
  std::vector<Inequality> cuts;  // in the order they were appended
  LpStatus final_status = LpStatus::Optimal;
};

// Root cutting-plane loop: solve the relaxation, then up to `rounds` times
// separate Type I then Type II cuts on the LP optimum, append them, and
// re-solve; stops early when a round yields no cuts.  bound_history is
// non-increasing (each round only adds valid constraints).
RootCutResult root_cut_loop(const Instance& inst, Formulation which,
                            int rounds, bool use_type1 = true,
                            bool use_type2 = true, int lb = 1);

}  // namespace ggdp
