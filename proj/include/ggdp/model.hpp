#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "ggdp/graph.hpp"

namespace ggdp {

enum class Formulation { F1 = 1, F2, F3, F4, F5, F6, F7, F8 };

Formulation formulation_from_string(const std::string& s);
std::string formulation_name(Formulation f);

struct FamilyFlags {
  bool has1, has67, has89, has10;
};
// Constraint families per formulation: all have (2)-(5); (1) iff F1/F2/F5/F6;
// (6)-(7) iff F2/F4/F6/F8; (8)-(9) iff F3/F4/F7/F8; (10) iff F5..F8.
FamilyFlags family_flags(Formulation f);

// Variable packing shared by every module: x(u,i) then the y block.
inline int idx_x(int /*n*/, int m, int u, int i) { return (u - 1) * m + (i - 1); }
inline int idx_y(int n, int m, int v, int i) { return n * m + (v - 1) * m + (i - 1); }

struct Row {
  std::vector<int> coef;  // dense over 2nm
  int rhs = 0;
  char sense = 'L';  // 'L': <=, 'E': =
  std::string label;  // constraint family tag, e.g. "(3) v=2 i=3"
};

struct Model {
  Instance inst;
  Formulation which = Formulation::F1;
  int m = 0, lb = 1;
  std::vector<Row> rows;
  int ncols() const { return 2 * inst.n * m; }
};

// m defaults to upper_bound_m(inst); m_override > 0 forces a horizon (used by
// twin lifting, which keeps the original instance's m).
Model build_formulation(const Instance& inst, Formulation which, int lb = 1, int m_override = 0);

// CPLEX-style LP text: Maximize / Subject To (rows as <= or =) / Binary / End,
// variables named x_<u>_<i>, y_<v>_<i>, deterministic ordering.
std::string export_lp(const Model& model);

// Binary feasible points packed into one 64-bit word via idx_x/idx_y
// (requires 2nm <= 64). Enumeration order is deterministic: steps outer,
// choice-then-x-row inner; the parallel version splits on the step-1 choice
// and concatenates per-branch results, so both return identical lists.
std::uint64_t count_solutions(const Model& model);
std::uint64_t count_solutions_serial(const Model& model);
std::vector<std::uint64_t> enumerate_solutions(const Model& model);
std::vector<std::uint64_t> enumerate_solutions_serial(const Model& model);

bool point_satisfies(const Model& model, std::uint64_t pt);

// Canonical point for a legal sequence: start from (1,0) and apply choose
// (y_{v_i,i} = 1, x-rows zeroed over N<v_i> from step i on).
std::uint64_t point_from_sequence(const Instance& inst, const std::vector<int>& seq, int m);

// Integral point (formulation with (1) or (8)-(9)) back to a sequence,
// skipping empty steps; throws if a step holds two vertices or the result is
// not legal.
std::vector<int> sequence_from_point(const Instance& inst, std::uint64_t pt, int m);

// Fractional or integral assignment in expanded form (separation, LP).
struct Point {
  int n = 0, m = 0;
  std::vector<double> vals;  // size 2nm, packed via idx_x/idx_y

  Point() = default;
  Point(int n_, int m_) : n(n_), m(m_), vals(2 * n_ * m_, 0.0) {}
  double x(int u, int i) const { return vals[idx_x(n, m, u, i)]; }
  double y(int v, int i) const { return vals[idx_y(n, m, v, i)]; }
  void set_x(int u, int i, double val) { vals[idx_x(n, m, u, i)] = val; }
  void set_y(int v, int i, double val) { vals[idx_y(n, m, v, i)] = val; }
};

Point unpack_point(int n, int m, std::uint64_t pt);

}  // namespace ggdp
