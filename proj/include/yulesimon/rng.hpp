#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace yulesimon {

/// Seedable xoshiro256** generator. Every variate in the library is drawn
/// from one of these; there is no global generator.
///
/// A (seed, stream) pair selects an independent sequence, so parallel chains
/// and per-block kernels can each own a state derived from one master seed.
class RngState {
 public:
  explicit RngState(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double next_uniform() noexcept;

  /// Standard normal (Marsaglia polar method, spare value cached).
  double next_normal() noexcept;

  /// Standard exponential, -log(U).
  double next_exponential() noexcept;

  friend bool operator==(const RngState&, const RngState&) = default;

 private:
  std::array<std::uint64_t, 4> s_{};
  std::uint64_t seed_;
  std::uint64_t stream_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finaliser; used for seed derivation.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Child seed for sub-task `index` of a run seeded with `parent`.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept;

/// FNV-1a, for turning scenario labels into stream indices.
std::uint64_t hash_label(std::string_view label) noexcept;

/// Gamma with density proportional to x^(shape-1) exp(-rate x); mean shape/rate.
double sample_gamma(RngState& state, double shape, double rate);

double sample_beta(RngState& state, double alpha, double beta_param);

/// Number of Bernoulli(p) trials up to and including the first success,
/// support {1, 2, ...}. Saturates at UINT64_MAX.
std::uint64_t sample_geometric(RngState& state, double p);

/// Same law as sample_geometric with p = 1 - exp(log_fail), parameterised by
/// log(1 - p) so that p underflowing to zero stays well defined.
std::uint64_t sample_geometric_log_fail(RngState& state, double log_fail);

/// Draw w = -log(T) with T ~ Beta(alpha, k), k a positive integer. Computed
/// without forming T, so w is strictly positive and finite.
double sample_neg_log_beta(RngState& state, double alpha, std::uint64_t k);

}  // namespace yulesimon
