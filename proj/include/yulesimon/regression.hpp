#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "yulesimon/distribution.hpp"
#include "yulesimon/kernels.hpp"
#include "yulesimon/rng.hpp"
#include "yulesimon/trace.hpp"

namespace yulesimon {

/// Counts k_i with regressor rows x_i = (1, x_i2, ..., x_ip), stored row-major.
class RegressionDesign {
 public:
  RegressionDesign(std::vector<Count> k, std::vector<double> x, std::size_t n_beta);

  std::size_t n() const noexcept { return k_.size(); }
  std::size_t n_beta() const noexcept { return n_beta_; }
  std::span<const Count> k() const noexcept { return k_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(x_).subspan(i * n_beta_, n_beta_);
  }
  std::span<const double> x() const noexcept { return x_; }

 private:
  std::vector<Count> k_;
  std::vector<double> x_;
  std::size_t n_beta_;
};

struct RegressionConfig {
  ChainConfig chain;
  /// Standard deviation of the random-walk step, per coordinate.
  double proposal_scale = 0.1;
  /// Zero vector when empty.
  std::vector<double> initial_beta;
  /// Tune proposal_scale during burn-in towards 20-40% acceptance.
  bool adapt = true;

  void validate(std::size_t n_beta) const;
};

/// |x'beta| at or beyond this is rejected before exponentiation.
inline constexpr double kLinkGuard = 700.0;

/// rho_i = exp(x_i' beta).
double link(std::span<const double> x_row, std::span<const double> beta);

/// log of the beta full conditional given the auxiliary w, up to a constant:
///   sum_i (x_i'beta - exp(x_i'beta) w_i) - beta'beta / 2.
/// Returns -inf when some |x_i'beta| reaches kLinkGuard.
double log_beta_conditional(std::span<const double> beta, std::span<const double> w,
                            const RegressionDesign& design,
                            kernels::Exec exec = kernels::Exec::automatic);

/// min(1, exp(log_proposed - log_current)).
double acceptance_probability(double log_current, double log_proposed);

struct MwgStepResult {
  std::vector<double> beta;
  bool accepted = false;
  bool guard_rejected = false;
};

/// One Metropolis-within-Gibbs sweep:
///   t_i ~ Beta(exp(x_i'beta) + 1, k_i), w_i = -log t_i,
///   beta* = beta + scale * z, accepted with probability
///   min(1, exp(L(beta*) - L(beta))), L = log_beta_conditional.
MwgStepResult mwg_step(RngState& state, std::span<const double> beta,
                       const RegressionDesign& design, double proposal_scale,
                       kernels::Exec exec = kernels::Exec::automatic);

/// Random-walk Metropolis update of x against an arbitrary log target.
/// Returns true on acceptance; x is updated in place.
template <class LogTarget>
bool rw_metropolis_step(RngState& state, std::vector<double>& x, double scale,
                        double log_current, LogTarget&& log_target) {
  std::vector<double> proposal(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) proposal[j] = x[j] + scale * state.next_normal();
  const double log_proposed = log_target(std::span<const double>(proposal));
  const double log_u = std::log(state.next_uniform());
  if (log_u < log_proposed - log_current) {
    x = std::move(proposal);
    return true;
  }
  return false;
}

/// Trace columns beta0..beta{p-1}; metadata holds acceptance_rate (over the
/// retained phase), proposal_scale (after tuning) and guard_rejections.
ChainTrace run_regression(const RegressionDesign& design, const RegressionConfig& cfg,
                          kernels::Exec exec = kernels::Exec::automatic);

/// Regressors x_i2.. ~ Uniform(0, 1), k_i ~ Yule-Simon(exp(x_i' beta_true)).
RegressionDesign simulate_regression_data(RngState& state, std::span<const double> beta_true,
                                          std::size_t n);

}  // namespace yulesimon
