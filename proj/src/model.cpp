#include "ggdp/model.hpp"

#include <sstream>
#include <stdexcept>

#include "ggdp/sequence.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ggdp {

Formulation formulation_from_string(const std::string& s) {
  if (s.size() == 2 && (s[0] == 'F' || s[0] == 'f') && s[1] >= '1' && s[1] <= '8')
    return static_cast<Formulation>(s[1] - '0');
  throw std::invalid_argument("formulation must be one of F1..F8");
}

std::string formulation_name(Formulation f) {
  return "F" + std::to_string(static_cast<int>(f));
}

FamilyFlags family_flags(Formulation f) {
  int k = static_cast<int>(f);
  return {
      k == 1 || k == 2 || k == 5 || k == 6,  // (1)
      k == 2 || k == 4 || k == 6 || k == 8,  // (6)-(7)
      k == 3 || k == 4 || k == 7 || k == 8,  // (8)-(9)
      k >= 5,                                // (10)
  };
}

Model build_formulation(const Instance& inst, Formulation which, int lb, int m_override) {
  int n = inst.n;
  int m = m_override > 0 ? m_override : upper_bound_m(inst);
  if (lb < 1 || lb > m) throw std::invalid_argument("lb out of 1..m");
  FamilyFlags fl = family_flags(which);

  Model model;
  model.inst = inst;
  model.which = which;
  model.m = m;
  model.lb = lb;
  int nc = 2 * n * m;

  auto tag = [](const char* fam, int a, int b) {
    std::string s = fam;
    if (a) s += " " + std::to_string(a);
    if (b) s += " i=" + std::to_string(b);
    return s;
  };
  auto add = [&](char sense, int rhs, const std::string& label) -> Row& {
    model.rows.push_back(Row{std::vector<int>(nc, 0), rhs, sense, label});
    return model.rows.back();
  };

  if (fl.has1)
    for (int i = 1; i <= m; ++i) {
      Row& r = add('L', 1, tag("(1)", 0, i));
      for (int v = 1; v <= n; ++v) r.coef[idx_y(n, m, v, i)] = 1;
    }
  for (int v = 1; v <= n; ++v) {
    Row& r = add('L', 1, tag("(2)", v, 0));
    for (int i = 1; i <= m; ++i) r.coef[idx_y(n, m, v, i)] = 1;
  }
  for (int v = 1; v <= n; ++v)
    for (int i = 2; i <= m; ++i) {
      Row& r = add('L', 0, tag("(3)", v, i));
      r.coef[idx_y(n, m, v, i)] = 1;
      for (int u : vs_list(inst.nb(v))) {
        r.coef[idx_x(n, m, u, i - 1)] -= 1;
        r.coef[idx_x(n, m, u, i)] += 1;
      }
    }
  for (int u = 1; u <= n; ++u)
    for (int i = 1; i <= m; ++i) {
      Row& r = add('L', 1, tag("(4)", u, i));
      r.coef[idx_x(n, m, u, i)] = 1;
      for (int v : vs_list(inst.nb(u))) r.coef[idx_y(n, m, v, i)] += 1;
    }
  for (int u = 1; u <= n; ++u)
    for (int i = 2; i <= m; ++i) {
      Row& r = add('L', 0, tag("(5)", u, i));
      r.coef[idx_x(n, m, u, i)] = 1;
      r.coef[idx_x(n, m, u, i - 1)] = -1;
    }
  if (fl.has67) {
    for (int u = 1; u <= n; ++u)
      for (int i = 2; i <= m; ++i) {
        Row& r = add('L', 0, tag("(6)", u, i));
        r.coef[idx_x(n, m, u, i - 1)] = 1;
        r.coef[idx_x(n, m, u, i)] = -1;
        for (int v : vs_list(inst.nb(u))) r.coef[idx_y(n, m, v, i)] -= 1;
      }
    for (int u = 1; u <= n; ++u) {
      Row& r = add('L', -1, tag("(7)", u, 0));
      r.coef[idx_x(n, m, u, 1)] = -1;
      for (int v : vs_list(inst.nb(u))) r.coef[idx_y(n, m, v, 1)] -= 1;
    }
  }
  if (fl.has89) {
    for (int i = 1; i <= lb; ++i) {
      Row& r = add('E', 1, tag("(8)", 0, i));
      for (int v = 1; v <= n; ++v) r.coef[idx_y(n, m, v, i)] = 1;
    }
    for (int i = lb; i <= m - 1; ++i) {
      Row& r = add('L', 0, tag("(9)", 0, i));
      for (int v = 1; v <= n; ++v) {
        r.coef[idx_y(n, m, v, i + 1)] = 1;
        r.coef[idx_y(n, m, v, i)] = -1;
      }
    }
  }
  if (fl.has10)
    for (int v = 1; v <= n; ++v) {
      Row& r = add('L', -1, tag("(10)", v, 0));
      for (int u : vs_list(inst.nb(v)))
        for (int i = 1; i <= m; ++i) r.coef[idx_y(n, m, u, i)] -= 1;
    }
  return model;
}

namespace {

std::string var_name(int n, int m, int j) {
  int block = j / (n * m);
  int u = (j % (n * m)) / m + 1;
  int i = j % m + 1;
  return (block == 0 ? "x_" : "y_") + std::to_string(u) + "_" + std::to_string(i);
}

void render_terms(std::ostringstream& out, const std::vector<int>& coef, int n, int m) {
  bool first = true;
  for (int j = 0; j < static_cast<int>(coef.size()); ++j) {
    int c = coef[j];
    if (!c) continue;
    if (first) {
      if (c == -1)
        out << "- ";
      else if (c != 1)
        out << c << " ";
      first = false;
    } else {
      out << (c > 0 ? " + " : " - ");
      if (c != 1 && c != -1) out << std::abs(c) << " ";
    }
    out << var_name(n, m, j);
  }
}

}  // namespace

std::string export_lp(const Model& model) {
  int n = model.inst.n, m = model.m;
  std::ostringstream out;
  out << "Maximize\n obj:";
  for (int v = 1; v <= n; ++v)
    for (int i = 1; i <= m; ++i)
      out << (v == 1 && i == 1 ? " " : " + ") << "y_" << v << "_" << i;
  out << "\nSubject To\n";
  for (const Row& r : model.rows) {
    std::ostringstream terms;
    render_terms(terms, r.coef, n, m);
    out << " " << terms.str() << (r.sense == 'E' ? " = " : " <= ") << r.rhs << "\n";
  }
  out << "Binary\n";
  for (int j = 0; j < model.ncols(); ++j) out << " " << var_name(n, m, j) << "\n";
  out << "End\n";
  return out.str();
}

namespace {

struct Enumerator {
  const Instance& inst;
  FamilyFlags fl;
  int n, m, lb;
  std::vector<std::uint64_t>* out;  // null: count only
  std::uint64_t count = 0;
  std::uint64_t cur = 0;

  Enumerator(const Model& model, std::vector<std::uint64_t>* o)
      : inst(model.inst), fl(family_flags(model.which)), n(model.inst.n), m(model.m),
        lb(model.lb), out(o) {}

  void leaf(VertexSet covered) {
    if (fl.has10 && covered != inst.vertices()) return;
    ++count;
    if (out) out->push_back(cur);
  }

  // step i (1-based), prev_row = x-row of step i-1 (V for i=1)
  void rec(int i, VertexSet prev_row, VertexSet chosen, bool prev_empty, VertexSet covered) {
    if (i > m) {
      leaf(covered);
      return;
    }
    for (int c = 0; c <= n; ++c) {
      if (c && vs_has(chosen, c)) continue;
      if (fl.has89 && i <= lb && c == 0) continue;          // (8): step must pick
      if (fl.has89 && i > lb && prev_empty && c) continue;  // (9): no revival
      if (c && i >= 2 && (inst.nb(c) & prev_row) == 0) continue;  // (3)
      VertexSet avail = i >= 2 ? prev_row : inst.vertices();
      VertexSet base = avail & ~(c ? inst.nb(c) : 0);  // (4) forces these to 0
      std::uint64_t ybit = c ? std::uint64_t{1} << idx_y(n, m, c, i) : 0;
      cur |= ybit;
      VertexSet cov2 = covered | (c ? inst.nb(c) : 0);
      VertexSet chosen2 = chosen | (c ? vbit(c) : 0);
      if (fl.has67) {
        set_row(i, base);
        rec(i + 1, base, chosen2, c == 0, cov2);
        clear_row(i, base);
      } else {
        // (5) allows free drops: every subset of base is a valid x-row
        VertexSet sub = base;
        for (;;) {
          set_row(i, sub);
          rec(i + 1, sub, chosen2, c == 0, cov2);
          clear_row(i, sub);
          if (!sub) break;
          sub = (sub - 1) & base;
        }
      }
      cur &= ~ybit;
    }
  }

  void set_row(int i, VertexSet row) {
    for (int u : vs_list(row)) cur |= std::uint64_t{1} << idx_x(n, m, u, i);
  }
  void clear_row(int i, VertexSet row) {
    for (int u : vs_list(row)) cur &= ~(std::uint64_t{1} << idx_x(n, m, u, i));
  }
};

void check_size(const Model& model) {
  if (model.ncols() > 64)
    throw std::invalid_argument("enumeration size guard: 2nm = " +
                                std::to_string(model.ncols()) + " exceeds 64");
}

// Runs one step-1 branch: candidate c (0 = no vertex) with every admissible
// first x-row. Mirrors Enumerator::rec at i=1 exactly.
void run_branch(const Model& model, int c, std::vector<std::uint64_t>* out,
                std::uint64_t& count) {
  Enumerator e(model, out);
  FamilyFlags fl = e.fl;
  if (fl.has89 && e.lb >= 1 && c == 0) return;
  VertexSet base = e.inst.vertices() & ~(c ? e.inst.nb(c) : 0);
  std::uint64_t ybit = c ? std::uint64_t{1} << idx_y(e.n, e.m, c, 1) : 0;
  e.cur |= ybit;
  VertexSet cov = c ? e.inst.nb(c) : 0;
  VertexSet chosen = c ? vbit(c) : 0;
  if (fl.has67) {
    e.set_row(1, base);
    e.rec(2, base, chosen, c == 0, cov);
  } else {
    VertexSet sub = base;
    for (;;) {
      e.set_row(1, sub);
      e.rec(2, sub, chosen, c == 0, cov);
      e.clear_row(1, sub);
      if (!sub) break;
      sub = (sub - 1) & base;
    }
  }
  count = e.count;
}

}  // namespace

std::uint64_t count_solutions_serial(const Model& model) {
  check_size(model);
  Enumerator e(model, nullptr);
  e.rec(1, 0, 0, false, 0);
  return e.count;
}

std::vector<std::uint64_t> enumerate_solutions_serial(const Model& model) {
  check_size(model);
  std::vector<std::uint64_t> pts;
  Enumerator e(model, &pts);
  e.rec(1, 0, 0, false, 0);
  return pts;
}

std::uint64_t count_solutions(const Model& model) {
  check_size(model);
  int n = model.inst.n;
  std::vector<std::uint64_t> counts(n + 1, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int c = 0; c <= n; ++c) run_branch(model, c, nullptr, counts[c]);
  std::uint64_t total = 0;
  for (auto v : counts) total += v;
  return total;
}

std::vector<std::uint64_t> enumerate_solutions(const Model& model) {
  check_size(model);
  int n = model.inst.n;
  std::vector<std::vector<std::uint64_t>> parts(n + 1);
  std::vector<std::uint64_t> counts(n + 1, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int c = 0; c <= n; ++c) run_branch(model, c, &parts[c], counts[c]);
  std::vector<std::uint64_t> pts;
  for (auto& p : parts) pts.insert(pts.end(), p.begin(), p.end());
  return pts;
}

bool point_satisfies(const Model& model, std::uint64_t pt) {
  for (const Row& r : model.rows) {
    long long lhs = 0;
    for (int j = 0; j < model.ncols(); ++j)
      if ((pt >> j) & 1) lhs += r.coef[j];
    if (r.sense == 'E' ? lhs != r.rhs : lhs > r.rhs) return false;
  }
  return true;
}

std::uint64_t point_from_sequence(const Instance& inst, const std::vector<int>& seq, int m) {
  if (static_cast<int>(seq.size()) > m)
    throw std::invalid_argument("sequence longer than horizon m");
  SequenceCheck chk = check_sequence(inst, seq);
  if (!chk.legal) throw std::invalid_argument("sequence is not legal");
  int n = inst.n;
  std::uint64_t pt = 0;
  for (int u = 1; u <= n; ++u)
    for (int i = 1; i <= m; ++i) pt |= std::uint64_t{1} << idx_x(n, m, u, i);
  for (int s = 0; s < static_cast<int>(seq.size()); ++s) {
    int v = seq[s], i = s + 1;
    pt |= std::uint64_t{1} << idx_y(n, m, v, i);
    for (int u : vs_list(inst.nb(v)))
      for (int j = i; j <= m; ++j) pt &= ~(std::uint64_t{1} << idx_x(n, m, u, j));
  }
  return pt;
}

std::vector<int> sequence_from_point(const Instance& inst, std::uint64_t pt, int m) {
  int n = inst.n;
  std::vector<int> seq;
  for (int i = 1; i <= m; ++i) {
    int got = 0;
    for (int v = 1; v <= n; ++v)
      if ((pt >> idx_y(n, m, v, i)) & 1) {
        if (got) throw std::invalid_argument("two vertices chosen at step " + std::to_string(i));
        got = v;
      }
    if (got) seq.push_back(got);
  }
  if (!check_sequence(inst, seq).legal)
    throw std::invalid_argument("point does not encode a legal sequence");
  return seq;
}

Point unpack_point(int n, int m, std::uint64_t pt) {
  Point p(n, m);
  for (int j = 0; j < 2 * n * m; ++j) p.vals[j] = (pt >> j) & 1;
  return p;
}

}  // namespace ggdp
