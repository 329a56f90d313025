// Compares the OpenMP finite-difference kernel against the serial reference.
#include <chrono>
#include <cstdio>
#include <omp.h>

#include "extsym/gridcheck.hpp"
#include "extsym/scenarios.hpp"

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main() {
  using namespace extsym;
  const DalembertParams p;
  const ExpPoly f = dalembert_weight(p) * plane_wave(p);
  const LinDiffOp op = dalembert_engaging_operator(p);
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%8s %12s %12s %8s %12s\n", "extent", "serial [s]", "omp [s]", "speedup", "max |diff|");
  for (int extent : {9, 15, 21, 27}) {
    GridSpec g;
    g.extent = extent;
    const GridFunction samples = sample(f, g);
    GridFunction a, b;
    const double ts = best_of(3, [&] { a = fd_apply_serial(op, samples); });
    const double tp = best_of(3, [&] { b = fd_apply(op, samples); });
    std::printf("%8d %12.4e %12.4e %8.2f %12.3e\n", extent, ts, tp, ts / tp, max_abs_difference(a, b));
  }
  return 0;
}
