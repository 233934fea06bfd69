#pragma once

#include <cstdint>

#include "yulesimon/rng.hpp"

namespace yulesimon {

/// Observation type: a count on {1, 2, ...}.
using Count = std::uint64_t;

/// Shape parameter of the Yule-Simon law. Construction enforces rho > 0.
class YuleSimonParam {
 public:
  explicit YuleSimonParam(double rho);
  double rho() const noexcept { return rho_; }

 private:
  double rho_;
};

/// log B(a, b), evaluated without forming any gamma function directly.
double log_beta_fn(double a, double b);

/// log f(k; rho) = log rho + log B(k, rho + 1).
double log_pmf(Count k, YuleSimonParam param);
double pmf(Count k, YuleSimonParam param);

/// P(K > k) = k B(k, rho + 1).
double log_ccdf(Count k, YuleSimonParam param);
double ccdf(Count k, YuleSimonParam param);

/// One draw via the exponential-geometric mixture:
/// W ~ Exp(rho), K | W ~ Geometric(exp(-W)).
Count sample(RngState& state, YuleSimonParam param);

}  // namespace yulesimon
