#include "yulesimon/distribution.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "yulesimon/error.hpp"

namespace yulesimon {

namespace {

using DoublePolicy =
    boost::math::policies::policy<boost::math::policies::promote_double<false>>;

void check_k(Count k) {
  if (k < 1) throw DomainError("Yule-Simon support starts at k = 1");
}

}  // namespace

YuleSimonParam::YuleSimonParam(double rho) : rho_(rho) {
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw DomainError("Yule-Simon shape rho must be positive and finite, got " +
                      std::to_string(rho));
}

double log_beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("log_beta_fn: arguments must be positive and finite");
  // B(a, b) = Gamma(b) * [Gamma(a) / Gamma(a + b)]. The bracketed ratio is
  // computed directly, which avoids cancellation between two large lgammas;
  // it can underflow for large a and b, in which case fall back to lgamma.
  const double ratio = boost::math::tgamma_delta_ratio(a, b, DoublePolicy());
  if (ratio > 1e-290 && std::isfinite(ratio))
    return boost::math::lgamma(b, DoublePolicy()) + std::log(ratio);
  return boost::math::lgamma(a, DoublePolicy()) + boost::math::lgamma(b, DoublePolicy()) -
         boost::math::lgamma(a + b, DoublePolicy());
}

double log_pmf(Count k, YuleSimonParam param) {
  check_k(k);
  const double rho = param.rho();
  return std::log(rho) + log_beta_fn(static_cast<double>(k), rho + 1.0);
}

double pmf(Count k, YuleSimonParam param) { return std::exp(log_pmf(k, param)); }

double log_ccdf(Count k, YuleSimonParam param) {
  check_k(k);
  const double kd = static_cast<double>(k);
  return std::log(kd) + log_beta_fn(kd, param.rho() + 1.0);
}

double ccdf(Count k, YuleSimonParam param) { return std::exp(log_ccdf(k, param)); }

Count sample(RngState& state, YuleSimonParam param) {
  const double w = sample_gamma(state, 1.0, param.rho());
  // log of the failure probability 1 - exp(-w) (Maechler's log1mexp).
  const double log_fail = w > M_LN2 ? std::log1p(-std::exp(-w)) : std::log(-std::expm1(-w));
  return sample_geometric_log_fail(state, log_fail);
}

}  // namespace yulesimon
