// Serial reference vs OpenMP kernels for the extremal searches. Each row
// checks that both paths agree before reporting timings.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "homlab/extremal.hpp"
#include "homlab/permgroup.hpp"

namespace {

double time_best(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    best = std::min(best, dt.count());
  }
  return best;
}

bool report(const std::string& name, double serial, double parallel, bool agree) {
  std::printf("%-28s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s\n", name.c_str(),
              serial, parallel, parallel > 0 ? serial / parallel : 0.0,
              agree ? "agree" : "MISMATCH");
  return agree;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homlab kernel benchmark"};
  int jobs = 0, reps = 3, group_n = 16, oracle_n = 5;
  app.add_option("--jobs", jobs, "threads for the parallel kernels (0 = all)");
  app.add_option("--reps", reps, "repetitions, best time kept")->check(CLI::PositiveNumber);
  app.add_option("--group-n", group_n, "largest degree for the regular-group search")
      ->check(CLI::Range(2, 20));
  app.add_option("--oracle-n", oracle_n, "degree for the partition oracle")->check(CLI::Range(2, 5));
  CLI11_PARSE(app, argc, argv);
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  std::printf("threads: %d\n", threads);

  bool ok = true;
  for (int n = 8; n <= group_n; n += 4) {
    const auto groups = n <= 16 ? homlab::enumerate_regular_groups(n)
                                : homlab::enumerate_regular_groups_extended(n);
    for (int k : {1, 2}) {
      homlab::GroupSearchResult s, p;
      const double ts = time_best(reps, [&] { s = homlab::best_orbital_coloring_serial(groups, k); });
      const double tp =
          time_best(reps, [&] { p = homlab::best_orbital_coloring_parallel(groups, k, threads); });
      ok &= report("groups n=" + std::to_string(n) + " k=" + std::to_string(k), ts, tp,
                   s.best == p.best && s.delta == p.delta);
    }
  }
  for (int k : {1, 2}) {
    homlab::OracleResult s, p;
    const double ts = time_best(reps, [&] { s = homlab::partition_oracle_serial(oracle_n, k); });
    const double tp =
        time_best(reps, [&] { p = homlab::partition_oracle_parallel(oracle_n, k, threads); });
    ok &= report("oracle n=" + std::to_string(oracle_n) + " k=" + std::to_string(k), ts, tp,
                 s.delta == p.delta && s.partitions == p.partitions &&
                     s.witness.matrix() == p.witness.matrix());
  }
  return ok ? 0 : 1;
}
