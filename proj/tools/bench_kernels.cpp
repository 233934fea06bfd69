// Wall-clock comparison of the serial and OpenMP kernel paths.
//
//   bench_kernels [--n N] [--reps R]
//
// Prints one row per kernel with the best-of-R time for each path, the
// speedup, and whether the two results are bit-identical.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include <omp.h>

#include "simon_corpus.hpp"
#include "yulesimon/corpus.hpp"
#include "yulesimon/gibbs.hpp"
#include "yulesimon/kernels.hpp"

using namespace yulesimon;
using kernels::Exec;

namespace {

double best_ms(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

template <class R>
void row(const char* name, int reps, const std::function<R(Exec)>& kernel) {
  R serial{}, parallel{};
  const double ts = best_ms(reps, [&] { serial = kernel(Exec::serial); });
  const double tp = best_ms(reps, [&] { parallel = kernel(Exec::parallel); });
  std::printf("%-14s %12.3f %12.3f %9.2fx  %s\n", name, ts, tp, ts / tp,
              serial == parallel ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = 1'000'000;
  int reps = 5;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (!std::strcmp(argv[i], "--n")) n = std::strtoull(argv[i + 1], nullptr, 10);
    else if (!std::strcmp(argv[i], "--reps")) reps = std::atoi(argv[i + 1]);
  }

  RngState rng(99);
  const auto k = simulate_counts(rng, YuleSimonParam(0.9), n);
  std::vector<double> eta(n), w(n), rates(n);
  for (std::size_t i = 0; i < n; ++i) {
    eta[i] = rng.next_normal();
    w[i] = rng.next_exponential();
    rates[i] = std::exp(eta[i]);
  }
  const std::string text = testutil::simon_text(5, n, 0.08);

  std::printf("n = %zu, threads = %d, best of %d\n", n, omp_get_max_threads(), reps);
  std::printf("%-14s %12s %12s %10s  %s\n", "kernel", "serial ms", "parallel ms", "speedup",
              "identical");
  row<double>("aux_sum", reps, [&](Exec e) { return kernels::aux_sum(7, 0.9, k, e); });
  row<std::vector<double>>("aux_draw", reps, [&](Exec e) {
    std::vector<double> out(n);
    kernels::aux_draw(7, rates, k, out, e);
    return out;
  });
  row<double>("harmonic_sum", reps, [&](Exec e) { return kernels::harmonic_sum(0.9, k, e); });
  row<double>("log_beta_sum", reps, [&](Exec e) { return kernels::log_beta_sum(0.9, k, e); });
  row<double>("link_sum", reps, [&](Exec e) { return kernels::link_sum(eta, w, e); });
  row<FrequencyVector>("count_words", reps, [&](Exec e) { return count_words(text, {}, e); });
  return 0;
}
