// Benchmark: OpenMP-parallel kernels vs their serial reference
// implementations (point enumeration/counting and validity sweeps).

#include <chrono>
#include <cstdio>
#include <string>

#ifdef GGDP_HAVE_OPENMP
#include <omp.h>
#endif

#include "ggdp/graph.hpp"
#include "ggdp/model.hpp"
#include "ggdp/polytope.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

ggdp::Instance bull() {
  return ggdp::make_instance(
      5, {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 5}}, ggdp::vs_all(5));
}

void bench_counting(const std::string& name, const ggdp::Instance& inst,
                    ggdp::Formulation form) {
  const ggdp::Model model = ggdp::build_formulation(inst, form, 1);
  auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t serial = ggdp::count_solutions_serial(model);
  const double ts = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const std::uint64_t parallel = ggdp::count_solutions(model);
  const double tp = seconds_since(t0);
  std::printf("%-28s count=%-10llu serial %8.3fs  parallel %8.3fs  (x%.2f)%s\n",
              name.c_str(), static_cast<unsigned long long>(parallel), ts, tp,
              tp > 0 ? ts / tp : 0.0, serial == parallel ? "" : "  MISMATCH");
}

void bench_validity(const std::string& name, const ggdp::Instance& inst) {
  const ggdp::VertexCloud cloud =
      ggdp::enumerate_cloud(inst, ggdp::Formulation::F1);
  const auto tuples = ggdp::family_tuples(inst);
  int bad = 0;
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& spec : tuples)
    if (!ggdp::check_valid_serial(ggdp::build_from_spec(inst, spec), cloud))
      ++bad;
  const double ts = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  for (const auto& spec : tuples)
    if (!ggdp::check_valid(ggdp::build_from_spec(inst, spec), cloud)) ++bad;
  const double tp = seconds_since(t0);
  std::printf(
      "%-28s ineqs=%-6zu cloud=%-8zu serial %8.3fs  parallel %8.3fs  (x%.2f)%s\n",
      name.c_str(), tuples.size(), cloud.size(), ts, tp,
      tp > 0 ? ts / tp : 0.0, bad == 0 ? "" : "  INVALID FOUND");
}

}  // namespace

int main() {
#ifdef GGDP_HAVE_OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP unavailable: parallel kernels run serially\n");
#endif
  std::printf("\n-- 0/1 point counting --\n");
  bench_counting("bull F1", bull(), ggdp::Formulation::F1);
  bench_counting("bull F5", bull(), ggdp::Formulation::F5);
  const ggdp::Instance w83 = ggdp::gen_web(8, 3, ggdp::vs_of({1, 2, 3, 4, 5, 7}));
  bench_counting("W_8^3 F1", w83, ggdp::Formulation::F1);
  std::printf("\n-- validity sweeps over all family tuples --\n");
  bench_validity("bull (C=V)", bull());
  bench_validity("W_8^3", w83);
  return 0;
}
