#include "yulesimon/mle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "yulesimon/error.hpp"
#include "yulesimon/gibbs.hpp"

namespace yulesimon {

void FixedPointConfig::validate() const {
  if (!(tolerance > 0.0)) throw DomainError("fixed-point tolerance must be positive");
  if (max_iterations == 0) throw DomainError("fixed-point iteration cap must be positive");
  if (!(initial_rho > 0.0)) throw DomainError("fixed-point initial rho must be positive");
}

double log_likelihood(std::span<const Count> data, double rho, kernels::Exec exec) {
  validate_counts(data);
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("log_likelihood: rho must be positive");
  return static_cast<double>(data.size()) * std::log(rho) + kernels::log_beta_sum(rho, data, exec);
}

double score(std::span<const Count> data, double rho, kernels::Exec exec) {
  validate_counts(data);
  if (!(rho > 0.0)) throw DomainError("score: rho must be positive");
  return static_cast<double>(data.size()) / rho - kernels::harmonic_sum(rho, data, exec);
}

FixedPointResult fixed_point_fit(std::span<const Count> data, const FixedPointConfig& cfg,
                                 kernels::Exec exec) {
  validate_counts(data);
  cfg.validate();
  if (std::all_of(data.begin(), data.end(), [](Count k) { return k == 1; }))
    throw DivergenceError(
        "all counts equal 1: the likelihood increases in rho without bound, no finite MLE");

  const double n = static_cast<double>(data.size());
  double rho = cfg.initial_rho;
  for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
    const double next = n / kernels::harmonic_sum(rho, data, exec);
    const double step = std::abs(next - rho);
    rho = next;
    if (step < cfg.tolerance) {
      FixedPointResult r;
      r.rho_hat = rho;
      r.iterations = it;
      r.score_residual = score(data, rho, exec);
      r.loglik = log_likelihood(data, rho, exec);
      return r;
    }
  }
  throw ConvergenceError("fixed-point iteration did not converge in " +
                             std::to_string(cfg.max_iterations) + " iterations (last rho " +
                             std::to_string(rho) + ")",
                         rho);
}

}  // namespace yulesimon
