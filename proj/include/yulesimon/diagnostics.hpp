#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace yulesimon {

/// Classic (non-split) Gelman-Rubin potential scale reduction factor for one
/// scalar parameter, floored at 1. All chains must have the same length.
double gelman_rubin(std::span<const std::vector<double>> chains);

struct GewekeOptions {
  double frac_first = 0.1;
  double frac_last = 0.5;
  /// Use the raw sample variance instead of the batch-means estimate of the
  /// spectral density at zero.
  bool plain_variance = false;
};

/// Geweke z-score comparing the means of the first and last trace segments.
double geweke(std::span<const double> trace, const GewekeOptions& opts = {});

/// Element t-1 is the mean of the first t samples.
std::vector<double> progressive_mean(std::span<const double> trace);

/// R-hat of the first t samples of every chain, for each t in `lengths`.
std::vector<double> gelman_rubin_by_prefix(std::span<const std::vector<double>> chains,
                                           std::span<const std::size_t> lengths);

struct DiagnosticsReport {
  std::string parameter;
  double rhat = 1.0;  ///< only meaningful with two or more chains
  bool has_rhat = false;
  std::vector<double> geweke_z;                      ///< one per chain
  std::vector<std::vector<double>> progressive_means;  ///< one series per chain
};

DiagnosticsReport diagnose(std::string parameter, std::span<const std::vector<double>> chains,
                           const GewekeOptions& opts = {});

}  // namespace yulesimon
