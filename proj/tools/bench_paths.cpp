// Benchmark: OpenMP path-parallel ensemble kernel against the serial
// reference implementation, and confirm bitwise agreement.

#include <chrono>
#include <cstdio>
#include <cstring>

#include "kraichnan/sde.hpp"

using namespace kraichnan;

static double run(bool parallel, const Configuration& x0, const SdeConfig& cfg,
                  PathEnsemble& out) {
  auto t0 = std::chrono::steady_clock::now();
  out = parallel
            ? simulate_ensemble(x0, cfg, std::vector<VectorObservable>{})
            : simulate_ensemble_serial(x0, cfg, std::vector<VectorObservable>{});
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 3;
  int paths = argc > 2 ? std::atoi(argv[2]) : 2000;
  SymbolParams p(n, 2, 1.0);
  SdeConfig cfg(p);
  cfg.paths = paths;
  cfg.dt_base = 1e-3;
  cfg.t_max = 0.1;
  Configuration x0(p.blocks(), p.d);
  for (int k = 1; k <= p.blocks(); ++k) x0.block(k)[(k - 1) % p.d] = 1.0;

  PathEnsemble serial, parallel;
  double ts = run(false, x0, cfg, serial);
  double tp = run(true, x0, cfg, parallel);

  bool identical =
      serial.endpoints == parallel.endpoints &&
      std::memcmp(serial.sup_distance.data(), parallel.sup_distance.data(),
                  sizeof(double) * serial.sup_distance.size()) == 0;

  std::printf("n=%d paths=%d\n", n, paths);
  std::printf("serial   : %.3f s  (%.0f paths/s)\n", ts, paths / ts);
  std::printf("parallel : %.3f s  (%.0f paths/s, speedup %.2fx)\n", tp,
              paths / tp, ts / tp);
  std::printf("bitwise identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
