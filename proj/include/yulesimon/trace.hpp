#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace yulesimon {

struct GammaPrior {
  double a = 0.25;  ///< shape
  double b = 0.05;  ///< rate

  void validate() const;
  double mean() const noexcept { return a / b; }
};

struct ChainConfig {
  std::size_t iterations = 50'000;
  std::size_t burn_in = 10'000;
  std::size_t thinning = 1;
  std::uint64_t seed = 1;
  /// Starting value of rho; the prior mean a/b when unset.
  std::optional<double> initial_rho;

  void validate() const;
  /// floor((iterations - burn_in) / thinning)
  std::size_t retained() const noexcept { return (iterations - burn_in) / thinning; }
  /// Whether 1-based iteration t is kept.
  bool keeps(std::size_t t) const noexcept {
    return t > burn_in && (t - burn_in) % thinning == 0;
  }
};

/// Retained draws of a chain, stored row-major (one row per kept iteration).
class ChainTrace {
 public:
  ChainTrace(std::vector<std::string> parameter_names, ChainConfig config);

  void push(std::span<const double> state, std::size_t iteration);

  std::size_t size() const noexcept { return iterations_.size(); }
  bool empty() const noexcept { return iterations_.empty(); }
  std::size_t dim() const noexcept { return names_.size(); }

  const std::vector<std::string>& parameter_names() const noexcept { return names_; }
  const ChainConfig& config() const noexcept { return config_; }
  const std::vector<std::size_t>& iterations() const noexcept { return iterations_; }

  double at(std::size_t row, std::size_t col) const { return values_[row * dim() + col]; }
  std::vector<double> column(std::size_t col) const;
  std::vector<double> column(const std::string& name) const;

  /// Free-form run metadata (acceptance rate, tuned proposal scale, ...).
  std::map<std::string, double> metadata;

  friend bool operator==(const ChainTrace& x, const ChainTrace& y) {
    return x.names_ == y.names_ && x.values_ == y.values_ && x.iterations_ == y.iterations_ &&
           x.metadata == y.metadata;
  }

 private:
  std::vector<std::string> names_;
  ChainConfig config_;
  std::vector<double> values_;
  std::vector<std::size_t> iterations_;
};

struct PosteriorSummary {
  double mean = 0.0;
  double median = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  double level = 0.95;
  std::size_t n_retained = 0;
};

/// Arithmetic mean, sample median and equal-tailed empirical quantile interval.
PosteriorSummary summarize(std::span<const double> draws, double level = 0.95);

/// Type-7 (linear interpolation) empirical quantile of sorted data.
double quantile_sorted(std::span<const double> sorted, double prob);

}  // namespace yulesimon
