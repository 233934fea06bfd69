#include "yulesimon/gibbs.hpp"

#include <cmath>
#include <exception>
#include <string>

#include "yulesimon/error.hpp"

namespace yulesimon {

void validate_counts(std::span<const Count> data) {
  if (data.empty()) throw DataError("no observations: the posterior would equal the prior");
  for (std::size_t i = 0; i < data.size(); ++i)
    if (data[i] < 1)
      throw DataError("observation " + std::to_string(i) + " is " + std::to_string(data[i]) +
                      "; Yule-Simon counts must be >= 1");
}

GibbsStepResult gibbs_step(RngState& state, double current_rho, std::span<const Count> data,
                           const GammaPrior& prior, kernels::Exec exec) {
  if (!(current_rho > 0.0)) throw DomainError("gibbs_step: current rho must be positive");
  const std::uint64_t sweep_key = state.next_u64();
  const double w_sum = kernels::aux_sum(sweep_key, current_rho, data, exec);
  const double shape = prior.a + static_cast<double>(data.size());
  const double rho = sample_gamma(state, shape, prior.b + w_sum);
  return {rho, w_sum};
}

ChainTrace run_chain(std::span<const Count> data, const GammaPrior& prior,
                     const ChainConfig& config, kernels::Exec exec) {
  validate_counts(data);
  prior.validate();
  config.validate();

  ChainTrace trace({"rho"}, config);
  RngState state(config.seed);
  double rho = config.initial_rho.value_or(prior.mean());
  for (std::size_t t = 1; t <= config.iterations; ++t) {
    rho = gibbs_step(state, rho, data, prior, exec).rho;
    if (config.keeps(t)) trace.push(std::span<const double>(&rho, 1), t);
  }
  return trace;
}

std::vector<ChainTrace> run_chains(std::span<const Count> data, const GammaPrior& prior,
                                   const ChainConfig& config, std::size_t chains) {
  validate_counts(data);
  prior.validate();
  config.validate();
  if (chains == 0) throw DomainError("need at least one chain");

  std::vector<ChainConfig> configs(chains, config);
  for (std::size_t c = 0; c < chains; ++c) {
    configs[c].seed = chains == 1 ? config.seed : derive_seed(config.seed, c);
    if (!config.initial_rho)
      configs[c].initial_rho =
          prior.mean() * kChainStartFactors[c % std::size(kChainStartFactors)];
  }

  std::vector<ChainTrace> out(chains, ChainTrace({"rho"}, config));
  std::exception_ptr failure;
  const auto nc = static_cast<std::ptrdiff_t>(chains);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t c = 0; c < nc; ++c) {
    try {
      out[c] = run_chain(data, prior, configs[c]);
    } catch (...) {
#pragma omp critical(ys_chain_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

PosteriorSummary summarize(const ChainTrace& trace, double level) {
  const auto draws = trace.column(0);
  return summarize(std::span<const double>(draws), level);
}

PosteriorSummary summarize_pooled(std::span<const ChainTrace> traces, std::size_t column,
                                  double level) {
  std::vector<double> pooled;
  for (const auto& t : traces) {
    const auto col = t.column(column);
    pooled.insert(pooled.end(), col.begin(), col.end());
  }
  return summarize(std::span<const double>(pooled), level);
}

std::vector<Count> simulate_counts(RngState& state, YuleSimonParam param, std::size_t n) {
  std::vector<Count> out(n);
  for (auto& k : out) k = sample(state, param);
  return out;
}

StudyRow replicate_study(double rho_true, std::size_t n, const GammaPrior& prior,
                         const ChainConfig& config, std::size_t replicates) {
  if (replicates < 2) throw DomainError("replicate_study needs at least two replicates");
  if (n == 0) throw DomainError("replicate_study needs n >= 1");
  const YuleSimonParam param(rho_true);
  prior.validate();
  config.validate();

  StudyRow row;
  row.rho_true = rho_true;
  row.n = n;
  row.replicates.resize(replicates);

  std::exception_ptr failure;
  const auto nr = static_cast<std::ptrdiff_t>(replicates);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t r = 0; r < nr; ++r) {
    try {
      auto& rep = row.replicates[r];
      rep.data_seed = derive_seed(config.seed, 2 * static_cast<std::uint64_t>(r));
      rep.chain_seed = derive_seed(config.seed, 2 * static_cast<std::uint64_t>(r) + 1);
      RngState data_rng(rep.data_seed);
      const auto data = simulate_counts(data_rng, param, n);
      ChainConfig cfg = config;
      cfg.seed = rep.chain_seed;
      rep.summary = summarize(run_chain(data, prior, cfg));
    } catch (...) {
#pragma omp critical(ys_replicate_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  const double rn = static_cast<double>(replicates);
  for (const auto& rep : row.replicates) {
    const double dm = rep.summary.mean - rho_true;
    const double dmed = rep.summary.median - rho_true;
    row.mean += rep.summary.mean / rn;
    row.median += rep.summary.median / rn;
    row.mse_mean += dm * dm / rn;
    row.mse_median += dmed * dmed / rn;
  }
  return row;
}

}  // namespace yulesimon
