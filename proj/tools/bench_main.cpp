// Benchmark: solver scaling on dense random matrices, and scenario
// throughput of the serial reference path vs. the OpenMP path (results are
// checked for bit-identity, not just compared for speed).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "donsa/config.hpp"
#include "donsa/hungarian.hpp"
#include "donsa/rng.hpp"

using namespace donsa;

namespace {

double median_solve_ms(int n, int reps, Rng& rng) {
  std::vector<double> times;
  for (int rep = 0; rep < reps; ++rep) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = rng.uniform01();
    const auto t0 = std::chrono::steady_clock::now();
    hungarian_solve(m, true);
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

bool reports_equal(const MetricsReport& a, const MetricsReport& b) {
  if (a.sweep_values != b.sweep_values || a.algorithms != b.algorithms) return false;
  for (std::size_t p = 0; p < a.raw.size(); ++p)
    for (std::size_t alg = 0; alg < a.raw[p].size(); ++alg)
      for (std::size_t r = 0; r < a.raw[p][alg].size(); ++r) {
        if (a.raw[p][alg][r].objective_bps != b.raw[p][alg][r].objective_bps) return false;
        if (a.raw[p][alg][r].nus != b.raw[p][alg][r].nus) return false;
      }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  int reps = 5;
  int runs = 10;
  if (argc > 1) reps = std::atoi(argv[1]);
  if (argc > 2) runs = std::atoi(argv[2]);

  std::printf("== solver scaling (dense random, median of %d) ==\n", reps);
  Rng rng(42);
  double prev = 0.0;
  for (int n : {200, 400, 800, 1600}) {
    const double ms = median_solve_ms(n, reps, rng);
    if (prev > 0.0)
      std::printf("n=%-5d %10.2f ms   t(2n)/t(n) = %.2f\n", n, ms, ms / prev);
    else
      std::printf("n=%-5d %10.2f ms\n", n, ms);
    prev = ms;
  }

  std::printf("\n== scenario throughput: serial reference vs parallel ==\n");
  Config cfg = default_config();
  ScenarioSpec spec = scenario_preset("s2");
  spec.runs = runs;
  spec.sweep_points = {250, 500};
  spec.base_seed = 7;

  spec.jobs = 1;
  auto t0 = std::chrono::steady_clock::now();
  const MetricsReport serial = run_scenario(spec, cfg.rf_catalog, cfg.channel_model);
  auto t1 = std::chrono::steady_clock::now();
  const double serial_s = std::chrono::duration<double>(t1 - t0).count();

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  spec.jobs = 0;  // all cores
  t0 = std::chrono::steady_clock::now();
  const MetricsReport parallel = run_scenario(spec, cfg.rf_catalog, cfg.channel_model);
  t1 = std::chrono::steady_clock::now();
  const double parallel_s = std::chrono::duration<double>(t1 - t0).count();

  std::printf("serial (jobs=1):    %7.2f s\n", serial_s);
  std::printf("parallel (%d thr):  %7.2f s   speedup %.2fx\n", threads, parallel_s,
              serial_s / parallel_s);
  if (reports_equal(serial, parallel)) {
    std::printf("results identical across both paths\n");
    return 0;
  }
  std::printf("RESULT MISMATCH between serial and parallel paths\n");
  return 1;
}
