#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ggdp/graph.hpp"
#include "ggdp/lp.hpp"
#include "ggdp/model.hpp"
#include "ggdp/polytope.hpp"
#include "ggdp/sequence.hpp"

using namespace ggdp;

namespace {

const char* kBullText =
    "p ggdp 5 5\n"
    "c 1 2 3 4 5\n"
    "e 1 2\ne 1 3\ne 2 3\ne 2 4\ne 3 5\n";

Instance bull() { return parse_instance(kBullText); }

Instance cycle5() {
  return make_instance(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}}, vs_all(5));
}

LinearProgram tiny(int ncols) {
  LinearProgram lp;
  lp.ncols = ncols;
  lp.obj.assign(ncols, 0.0);
  lp.lo.assign(ncols, 0.0);
  lp.hi.assign(ncols, 1.0);
  return lp;
}

// max residual violation of the LP rows at the returned primal point
double primal_violation(const LinearProgram& lp, const LpSolution& sol) {
  double worst = 0.0;
  for (const auto& row : lp.rows) {
    double lhs = 0.0;
    for (int j = 0; j < lp.ncols; ++j) lhs += row.coef[j] * sol.primal.vals[j];
    if (row.sense == 'L')
      worst = std::max(worst, lhs - row.rhs);
    else
      worst = std::max(worst, std::abs(lhs - row.rhs));
  }
  for (int j = 0; j < lp.ncols; ++j) {
    worst = std::max(worst, lp.lo[j] - sol.primal.vals[j]);
    worst = std::max(worst, sol.primal.vals[j] - lp.hi[j]);
  }
  return worst;
}

}  // namespace

TEST_CASE("hand LP: simple packing") {
  LinearProgram lp = tiny(2);
  lp.obj = {1.0, 1.0};
  lp.rows.push_back({{1.0, 1.0}, 1.0, 'L'});
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(primal_violation(lp, sol) < 1e-7);
}

TEST_CASE("hand LP: bound-limited optimum, no rows") {
  LinearProgram lp = tiny(3);
  lp.obj = {2.0, -1.0, 1.0};
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(3.0));  // x0=1, x1=0, x2=1
  CHECK(sol.primal.vals[0] == doctest::Approx(1.0));
  CHECK(sol.primal.vals[1] == doctest::Approx(0.0));
  CHECK(sol.primal.vals[2] == doctest::Approx(1.0));
}

TEST_CASE("hand LP: negative rhs row (starts with an artificial)") {
  // -x <= -0.5 forces x >= 0.5; maximize -x
  LinearProgram lp = tiny(1);
  lp.obj = {-1.0};
  lp.rows.push_back({{-1.0}, -0.5, 'L'});
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(-0.5));
  CHECK(sol.primal.vals[0] == doctest::Approx(0.5));
}

TEST_CASE("hand LP: equality row") {
  LinearProgram lp = tiny(2);
  lp.obj = {1.0, 0.0};
  lp.rows.push_back({{1.0, 1.0}, 1.5, 'E'});
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(1.0));  // x0 at its upper bound
  CHECK(primal_violation(lp, sol) < 1e-7);
}

TEST_CASE("hand LP: infeasible") {
  LinearProgram lp = tiny(1);
  lp.rows.push_back({{1.0}, -1.0, 'L'});  // x <= -1 with x >= 0
  CHECK(solve_lp(lp).status == LpStatus::Infeasible);

  LinearProgram lp2 = tiny(2);
  lp2.rows.push_back({{1.0, 1.0}, 3.0, 'E'});  // beyond both upper bounds
  CHECK(solve_lp(lp2).status == LpStatus::Infeasible);
}

TEST_CASE("relax shape") {
  Instance b = bull();
  Model md = build_formulation(b, Formulation::F3, 1);
  LinearProgram lp = relax(md);
  CHECK(lp.n == 5);
  CHECK(lp.m == 4);
  CHECK(lp.ncols == 40);
  CHECK(lp.rows.size() == md.rows.size());
  // objective: maximize total y mass
  for (int j = 0; j < 20; ++j) CHECK(lp.obj[j] == 0.0);
  for (int j = 20; j < 40; ++j) CHECK(lp.obj[j] == 1.0);
  for (int j = 0; j < 40; ++j) {
    CHECK(lp.lo[j] == 0.0);
    CHECK(lp.hi[j] == 1.0);
  }
}

TEST_CASE("bull relaxations all solve to 4") {
  Instance b = bull();
  for (int f = 1; f <= 8; ++f) {
    Model md = build_formulation(b, static_cast<Formulation>(f), 1);
    LinearProgram lp = relax(md);
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(primal_violation(lp, sol) < 1e-6);
  }
}

TEST_CASE("known LP optima on C_5 and P_4") {
  Instance c5 = cycle5();
  for (Formulation f : {Formulation::F1, Formulation::F3}) {
    LpSolution sol = solve_lp(relax(build_formulation(c5, f, 1)));
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(3.0).epsilon(1e-6));
  }
  Instance p4 = gen_path(4, 0);
  LpSolution sol = solve_lp(relax(build_formulation(p4, Formulation::F3, 1)));
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("relaxation bound dominates the best integral point") {
  for (const Instance& g : {bull(), cycle5(), gen_path(4, vs_of({2, 3}))}) {
    GrundyResult exact = grundy_exact(g);
    REQUIRE(exact.solved);
    for (int f = 1; f <= 8; ++f) {
      LpSolution sol =
          solve_lp(relax(build_formulation(g, static_cast<Formulation>(f), 1)));
      REQUIRE(sol.status == LpStatus::Optimal);
      CHECK(sol.objective >= exact.value - 1e-6);
    }
  }
}

TEST_CASE("root_cut_loop: bull F3 has no candidates, bound stays put") {
  RootCutResult res = root_cut_loop(bull(), Formulation::F3, 10);
  CHECK(res.final_status == LpStatus::Optimal);
  CHECK(res.cuts_added == 0);
  CHECK(res.cuts.empty());
  REQUIRE(res.bound_history.size() == 1);
  CHECK(res.bound_history[0] == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("root_cut_loop: history is non-increasing and cuts stay valid") {
  for (Formulation f : {Formulation::F1, Formulation::F3}) {
    Instance c5 = cycle5();
    RootCutResult res = root_cut_loop(c5, f, 10);
    CHECK(res.final_status == LpStatus::Optimal);
    REQUIRE(!res.bound_history.empty());
    for (std::size_t j = 1; j < res.bound_history.size(); ++j)
      CHECK(res.bound_history[j] <= res.bound_history[j - 1] + 1e-6);
    CHECK(res.bound_history.back() >= 3.0 - 1e-6);  // gamma_gr(C_5) = 3
    CHECK(res.cuts_added == static_cast<int>(res.cuts.size()));
    VertexCloud cloud = enumerate_cloud(c5, Formulation::F1);
    for (const Inequality& cut : res.cuts) CHECK(check_valid(cut, cloud));
  }
}

TEST_CASE("root_cut_loop: reproducible history") {
  Instance c5 = cycle5();
  RootCutResult a = root_cut_loop(c5, Formulation::F1, 6);
  RootCutResult b = root_cut_loop(c5, Formulation::F1, 6);
  CHECK(a.bound_history == b.bound_history);
  CHECK(a.cuts_added == b.cuts_added);
}

TEST_CASE("root_cut_loop: cut family toggles") {
  Instance c5 = cycle5();
  RootCutResult none = root_cut_loop(c5, Formulation::F1, 5, false, false);
  CHECK(none.cuts_added == 0);
  CHECK(none.bound_history.size() == 1);
  RootCutResult only1 = root_cut_loop(c5, Formulation::F1, 5, true, false);
  for (const Inequality& cut : only1.cuts)
    CHECK(cut.label.rfind("type1", 0) == 0);
  RootCutResult only2 = root_cut_loop(c5, Formulation::F1, 5, false, true);
  for (const Inequality& cut : only2.cuts)
    CHECK(cut.label.rfind("type2", 0) == 0);
}

TEST_CASE("root_cut_loop: lb parameter reaches the F3 equality rows") {
  Instance c5 = cycle5();
  RootCutResult res = root_cut_loop(c5, Formulation::F3, 3, true, true, 3);
  CHECK(res.final_status == LpStatus::Optimal);
  REQUIRE(!res.bound_history.empty());
  CHECK(res.bound_history[0] >= 3.0 - 1e-6);
}
