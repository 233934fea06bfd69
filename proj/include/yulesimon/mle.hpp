#pragma once

#include <cstddef>
#include <span>

#include "yulesimon/distribution.hpp"
#include "yulesimon/kernels.hpp"

namespace yulesimon {

struct FixedPointConfig {
  double tolerance = 1e-10;  ///< on |rho_{t+1} - rho_t|
  std::size_t max_iterations = 10'000;
  double initial_rho = 1.0;

  void validate() const;
};

struct FixedPointResult {
  double rho_hat = 0.0;
  std::size_t iterations = 0;
  double score_residual = 0.0;  ///< n / rho_hat - sum_i sum_{j<=k_i} 1/(rho_hat + j)
  double loglik = 0.0;
};

/// n log rho + sum_i log B(k_i, rho + 1).
double log_likelihood(std::span<const Count> data, double rho,
                      kernels::Exec exec = kernels::Exec::automatic);

/// d/d rho of log_likelihood: n / rho - sum_i sum_{j=1..k_i} 1/(rho + j).
double score(std::span<const Count> data, double rho,
             kernels::Exec exec = kernels::Exec::automatic);

/// Maximum likelihood estimate of rho by iterating
///   rho <- n / sum_i sum_{j=1..k_i} 1/(rho + j),
/// whose fixed points are the roots of the score.
///
/// Throws DivergenceError when every k_i is 1 (the likelihood then increases
/// without bound in rho) and ConvergenceError after max_iterations.
FixedPointResult fixed_point_fit(std::span<const Count> data, const FixedPointConfig& cfg = {},
                                 kernels::Exec exec = kernels::Exec::automatic);

}  // namespace yulesimon
