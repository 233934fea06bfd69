#include "yulesimon/trace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "yulesimon/error.hpp"

namespace yulesimon {

void GammaPrior::validate() const {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("Gamma prior needs a > 0 and b > 0");
}

void ChainConfig::validate() const {
  if (iterations == 0) throw DomainError("iterations must be positive");
  if (burn_in >= iterations) throw DomainError("burn-in must be smaller than iterations");
  if (thinning == 0) throw DomainError("thinning must be >= 1");
  if (initial_rho && !(*initial_rho > 0.0)) throw DomainError("initial rho must be positive");
}

ChainTrace::ChainTrace(std::vector<std::string> parameter_names, ChainConfig config)
    : names_(std::move(parameter_names)), config_(std::move(config)) {
  values_.reserve(config_.retained() * names_.size());
  iterations_.reserve(config_.retained());
}

void ChainTrace::push(std::span<const double> state, std::size_t iteration) {
  if (state.size() != names_.size()) throw std::invalid_argument("trace row has wrong width");
  values_.insert(values_.end(), state.begin(), state.end());
  iterations_.push_back(iteration);
}

std::vector<double> ChainTrace::column(std::size_t col) const {
  if (col >= dim()) throw std::out_of_range("trace column out of range");
  std::vector<double> out(size());
  for (std::size_t r = 0; r < size(); ++r) out[r] = at(r, col);
  return out;
}

std::vector<double> ChainTrace::column(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::out_of_range("no trace column named " + name);
  return column(static_cast<std::size_t>(it - names_.begin()));
}

double quantile_sorted(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw DataError("quantile of empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

PosteriorSummary summarize(std::span<const double> draws, double level) {
  if (draws.empty()) throw DataError("cannot summarize an empty trace");
  if (!(level > 0.0 && level < 1.0)) throw DomainError("credible level must lie in (0, 1)");
  PosteriorSummary s;
  s.level = level;
  s.n_retained = draws.size();
  double sum = 0.0;
  for (double x : draws) sum += x;
  s.mean = sum / static_cast<double>(draws.size());
  std::vector<double> sorted(draws.begin(), draws.end());
  std::sort(sorted.begin(), sorted.end());
  s.median = quantile_sorted(sorted, 0.5);
  const double tail = 0.5 * (1.0 - level);
  s.ci_lower = quantile_sorted(sorted, tail);
  s.ci_upper = quantile_sorted(sorted, 1.0 - tail);
  return s;
}

}  // namespace yulesimon
