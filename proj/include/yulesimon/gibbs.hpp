#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "yulesimon/distribution.hpp"
#include "yulesimon/kernels.hpp"
#include "yulesimon/rng.hpp"
#include "yulesimon/trace.hpp"

namespace yulesimon {

struct GibbsStepResult {
  double rho;
  double w_sum;
};

/// One sweep of the data-augmentation sampler for iid Yule-Simon data with a
/// Gamma(a, b) prior on rho:
///   t_i ~ Beta(rho + 1, k_i),  w_i = -log t_i,
///   rho ~ Gamma(a + n, b + sum w_i).
/// The auxiliary draws are made by kernels::aux_sum from a key taken from
/// `state`, so the result does not depend on the thread count.
GibbsStepResult gibbs_step(RngState& state, double current_rho, std::span<const Count> data,
                           const GammaPrior& prior,
                           kernels::Exec exec = kernels::Exec::automatic);

/// Throws DataError unless data is non-empty and every count is >= 1.
void validate_counts(std::span<const Count> data);

/// Runs `config.iterations` sweeps and keeps the post-burn-in, thinned draws
/// under the parameter name "rho".
ChainTrace run_chain(std::span<const Count> data, const GammaPrior& prior,
                     const ChainConfig& config,
                     kernels::Exec exec = kernels::Exec::automatic);

/// Runs several chains with seeds derived from config.seed. Chain c starts
/// from prior.mean() * kChainStartFactors[c % size] unless an initial rho is
/// set, in which case every chain starts there.
std::vector<ChainTrace> run_chains(std::span<const Count> data, const GammaPrior& prior,
                                   const ChainConfig& config, std::size_t chains);

inline constexpr double kChainStartFactors[] = {1.0, 0.1, 10.0, 0.3, 3.0};

/// Summary of the first parameter of a trace.
PosteriorSummary summarize(const ChainTrace& trace, double level = 0.95);

/// Summary of one parameter over the draws of all chains pooled.
PosteriorSummary summarize_pooled(std::span<const ChainTrace> traces, std::size_t column = 0,
                                  double level = 0.95);

struct ReplicateResult {
  std::uint64_t data_seed = 0;
  std::uint64_t chain_seed = 0;
  PosteriorSummary summary;
};

struct StudyRow {
  double rho_true = 0.0;
  std::size_t n = 0;
  double mean = 0.0;     ///< average of posterior means
  double median = 0.0;   ///< average of posterior medians
  double mse_mean = 0.0;
  double mse_median = 0.0;
  std::vector<ReplicateResult> replicates;
};

/// Simulates n Yule-Simon(rho) counts.
std::vector<Count> simulate_counts(RngState& state, YuleSimonParam param, std::size_t n);

/// Repeated-sampling study: for each replicate, fresh data of size n from
/// Yule-Simon(rho_true) and an independent chain. Replicate r uses seeds
/// derived from (config.seed, r), so rows are reproducible and replicates may
/// run in parallel.
StudyRow replicate_study(double rho_true, std::size_t n, const GammaPrior& prior,
                         const ChainConfig& config, std::size_t replicates);

}  // namespace yulesimon
