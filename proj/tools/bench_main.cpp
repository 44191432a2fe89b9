// bench_main.cpp -- compares the serial reference path of the engine
// against the OpenMP wave kernel on one affine case and checks that both
// produce identical results.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "klq/affine.hpp"
#include "klq/cli.hpp"

using namespace klq;

namespace {

double run_once(int n, std::int64_t p, const Weight& nu, int threads,
                KLResult* out) {
  ElementPool pool(affine_system(n));
  EngineOptions opt;
  opt.threads = threads;
  opt.verify = 0;
  const auto t0 = std::chrono::steady_clock::now();
  AffineReport rep = run_case(pool, n, p, nu, opt);
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  *out = std::move(rep.result);
  return dt;
}

}  // namespace

int main(int argc, char** argv) {
  int n = 4;
  std::int64_t p = 0;
  std::vector<std::int64_t> coords;
  int threads = omp_get_max_threads();
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    auto next = [&]() -> std::string {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "missing value after %s\n", a.c_str());
        std::exit(2);
      }
      return argv[++i];
    };
    if (a == "--n") {
      n = std::stoi(next());
    } else if (a == "--p") {
      p = std::stoll(next());
    } else if (a == "--weight") {
      for (long long v : parse_index_list(next())) coords.push_back(v);
    } else if (a == "--threads") {
      threads = std::stoi(next());
    } else {
      std::fprintf(stderr,
                   "usage: klq_bench [--n N] [--p P] [--weight a,b,..] "
                   "[--threads T]\n");
      return 2;
    }
  }
  if (p == 0) p = n + 1;
  const Weight nu = coords.empty() ? guess_weight(n) : Weight{coords};

  std::printf("case: n=%d p=%lld weight=%s\n", n, static_cast<long long>(p),
              nu.to_string().c_str());

  KLResult serial, parallel;
  const double t_serial = run_once(n, p, nu, 1, &serial);
  std::printf("serial reference:  %8.3fs  (waves=%llu corrections=%llu "
              "support=%zu)\n",
              t_serial,
              static_cast<unsigned long long>(serial.stats.counters.waves),
              static_cast<unsigned long long>(serial.stats.counters.corrections),
              serial.entries.size());

  const double t_par = run_once(n, p, nu, threads, &parallel);
  std::printf("openmp x%-2d:        %8.3fs  (waves=%llu corrections=%llu "
              "support=%zu)\n",
              threads, t_par,
              static_cast<unsigned long long>(parallel.stats.counters.waves),
              static_cast<unsigned long long>(parallel.stats.counters.corrections),
              parallel.entries.size());

  if (!serial.same_values(parallel)) {
    std::printf("MISMATCH between serial and parallel results\n");
    return 1;
  }
  std::printf("results identical; speedup %.2fx\n",
              t_par > 0 ? t_serial / t_par : 0.0);
  return 0;
}
