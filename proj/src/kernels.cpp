#include "yulesimon/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/digamma.hpp>

#include "yulesimon/error.hpp"

namespace yulesimon::kernels {

namespace {

constexpr Count kDirectHarmonicMax = 64;

std::size_t block_count(std::size_t n) { return (n + kBlockSize - 1) / kBlockSize; }

bool use_parallel(Exec exec, std::size_t n) {
  if (exec == Exec::automatic) return n >= kParallelThreshold;
  return exec == Exec::parallel;
}

// Runs body(b) for every block and sums the per-block results in block order.
template <class BlockFn>
double blocked_sum(std::size_t n, Exec exec, BlockFn&& body) {
  const std::size_t blocks = block_count(n);
  if (!use_parallel(exec, n)) {
    double total = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) total += body(b);
    return total;
  }
  std::vector<double> partial(blocks, 0.0);
  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) partial[b] = body(static_cast<std::size_t>(b));
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

template <class BlockFn>
void blocked_for(std::size_t n, Exec exec, BlockFn&& body) {
  const std::size_t blocks = block_count(n);
  if (!use_parallel(exec, n)) {
    for (std::size_t b = 0; b < blocks; ++b) body(b);
    return;
  }
  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) body(static_cast<std::size_t>(b));
}

std::size_t block_end(std::size_t b, std::size_t n) {
  return std::min(n, (b + 1) * kBlockSize);
}

}  // namespace

double harmonic_term(double rho, Count k) {
  if (k <= kDirectHarmonicMax) {
    double s = 0.0;
    for (Count j = 1; j <= k; ++j) s += 1.0 / (rho + static_cast<double>(j));
    return s;
  }
  return boost::math::digamma(rho + static_cast<double>(k) + 1.0) -
         boost::math::digamma(rho + 1.0);
}

double aux_sum(std::uint64_t sweep_key, double rho, std::span<const Count> k, Exec exec) {
  const double alpha = rho + 1.0;
  return blocked_sum(k.size(), exec, [&](std::size_t b) {
    RngState rng(sweep_key, b);
    double s = 0.0;
    for (std::size_t i = b * kBlockSize, e = block_end(b, k.size()); i < e; ++i)
      s += sample_neg_log_beta(rng, alpha, k[i]);
    return s;
  });
}

void aux_draw(std::uint64_t sweep_key, std::span<const double> rates,
              std::span<const Count> k, std::span<double> w, Exec exec) {
  if (rates.size() != k.size() || w.size() != k.size())
    throw std::invalid_argument("aux_draw: size mismatch");
  blocked_for(k.size(), exec, [&](std::size_t b) {
    RngState rng(sweep_key, b);
    for (std::size_t i = b * kBlockSize, e = block_end(b, k.size()); i < e; ++i)
      w[i] = sample_neg_log_beta(rng, rates[i] + 1.0, k[i]);
  });
}

double harmonic_sum(double rho, std::span<const Count> k, Exec exec) {
  return blocked_sum(k.size(), exec, [&](std::size_t b) {
    double s = 0.0;
    for (std::size_t i = b * kBlockSize, e = block_end(b, k.size()); i < e; ++i)
      s += harmonic_term(rho, k[i]);
    return s;
  });
}

double log_beta_sum(double rho, std::span<const Count> k, Exec exec) {
  const double b_arg = rho + 1.0;
  return blocked_sum(k.size(), exec, [&](std::size_t b) {
    double s = 0.0;
    for (std::size_t i = b * kBlockSize, e = block_end(b, k.size()); i < e; ++i)
      s += log_beta_fn(static_cast<double>(k[i]), b_arg);
    return s;
  });
}

double link_sum(std::span<const double> eta, std::span<const double> w, Exec exec) {
  if (eta.size() != w.size()) throw std::invalid_argument("link_sum: size mismatch");
  return blocked_sum(eta.size(), exec, [&](std::size_t b) {
    double s = 0.0;
    for (std::size_t i = b * kBlockSize, e = block_end(b, eta.size()); i < e; ++i)
      s += eta[i] - std::exp(eta[i]) * w[i];
    return s;
  });
}

}  // namespace yulesimon::kernels
