// Benchmark: OpenMP-parallel replication loop vs the serial reference, plus
// the quadrature oracle over a parameter grid.  Also verifies that the
// parallel path reproduces the serial results exactly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "relaysec/channel.hpp"
#include "relaysec/quadrature.hpp"
#include "relaysec/simulator.hpp"

using namespace relaysec;

namespace {

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t slots = 8'000'000;
  if (argc > 1) slots = std::strtoull(argv[1], nullptr, 10);

  SimConfig cfg;
  cfg.channel.mean_ar = mean_snr_from_db(5.0);
  cfg.channel.mean_rb = mean_snr_from_db(10.0);
  cfg.channel.mean_ae = mean_snr_from_db(0.0);
  cfg.channel.mean_re = mean_snr_from_db(2.0);
  cfg.policy.alpha = 7.0;
  cfg.policy.beta = 8.0;
  cfg.policy.rate_secret = 1.0;
  cfg.n_slots = slots;
  cfg.replications = 8;
  cfg.seed = 42;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP off)\n");
#endif

  SimEstimates serial, parallel;
  const double t_serial = timed([&] { serial = run_serial(cfg); });
  const double t_parallel = timed([&] { parallel = run(cfg); });

  const bool identical = serial.sop_e2e.value == parallel.sop_e2e.value &&
                         serial.tau_rb.value == parallel.tau_rb.value &&
                         serial.rho_a.value == parallel.rho_a.value;
  std::printf("simulator %llu slots x %d reps\n",
              static_cast<unsigned long long>(slots), cfg.replications);
  std::printf("  serial   %.3f s  (%.1f Mslot/s)\n", t_serial,
              slots / t_serial / 1e6);
  std::printf("  parallel %.3f s  (%.1f Mslot/s)  speedup %.2fx\n", t_parallel,
              slots / t_parallel / 1e6, t_serial / t_parallel);
  std::printf("  results identical: %s\n", identical ? "yes" : "NO");

  // Quadrature oracle over a small grid, serial vs parallel.
  const double alphas[] = {2.0, 5.0, 9.0};
  const double betas[] = {3.0, 8.0, 14.0};
  const double rates[] = {0.5, 1.0, 1.5};
  double sum_serial = 0.0, sum_parallel = 0.0;
  const double t_q_serial = timed([&] {
    for (double a : alphas)
      for (double b : betas)
        for (double r : rates)
          sum_serial += oracle::sop_hop1_adaptive(cfg.channel, a, b, r);
  });
  const double t_q_parallel = timed([&] {
    double acc = 0.0;
#pragma omp parallel for collapse(3) reduction(+ : acc)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          acc += oracle::sop_hop1_adaptive(cfg.channel, alphas[i], betas[j],
                                           rates[k]);
    sum_parallel = acc;
  });
  std::printf("quadrature oracle, 27-point grid\n");
  std::printf("  serial   %.3f s\n  parallel %.3f s  speedup %.2fx\n",
              t_q_serial, t_q_parallel, t_q_serial / t_q_parallel);
  std::printf("  checksum delta: %.3g\n", std::abs(sum_serial - sum_parallel));

  return identical ? 0 : 1;
}
