// Times the OpenMP kernels against their serial references on simulated
// networks of the study size.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "netmon/block_model.hpp"
#include "netmon/latent_space.hpp"
#include "netmon/scenario.hpp"
#include "netmon/statistics.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace netmon;
using Clock = std::chrono::steady_clock;

template <class F>
double best_of(int rounds, F&& f) {
  double best = 1e300;
  for (int r = 0; r < rounds; ++r) {
    const auto t0 = Clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

int main(int argc, char** argv) {
  const int rounds = argc > 1 ? std::atoi(argv[1]) : 3;
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads: %d, rounds: %d\n", threads, rounds);

  const DynamicNetwork dlsm = generate_dlsm(default_dlsm_config(0.5, 0.00014, EdgeKind::Binary, 7));
  const DynamicNetwork sbm = generate_ddcsbm(default_ddcsbm_config(0.5, 0.16, EdgeKind::Count, 7));

  volatile double sink = 0.0;
  for (const auto& [name, net] : {std::pair{"dlsm binary", &dlsm}, std::pair{"ddcsbm count", &sbm}}) {
    const Snapshot& snap = net->at(60);
    const double s1 = best_of(rounds, [&] { sink = sink + serial::neighborhood_sizes(snap).order2[0]; });
    const double p1 = best_of(rounds, [&] { sink = sink + neighborhood_sizes(snap, Execution::Parallel).order2[0]; });
    std::printf("[%s]\n", name);
    report("neighborhood sizes (1 snap)", s1, p1);
    const double s2 = best_of(rounds, [&] { sink = sink + serial::scan_series(*net, 20).values.back(); });
    const double p2 = best_of(rounds, [&] { sink = sink + scan_series(*net, 20, Execution::Parallel).values.back(); });
    report("scan series (T=110)", s2, p2);
  }

  Scenario s;
  s.model = ModelKind::Ddcsbm;
  s.edge_kind = EdgeKind::Binary;
  s.reps = 8;
  s.calibration_reps = 8;
  const double s3 = best_of(1, [&] { sink = sink + run_scenario(s, 1).records.size(); });
  const double p3 = best_of(1, [&] { sink = sink + run_scenario(s, 0).records.size(); });
  report("scenario (8+8 replicates)", s3, p3);
  return 0;
}
