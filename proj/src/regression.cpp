#include "yulesimon/regression.hpp"

#include <limits>
#include <string>

#include "yulesimon/error.hpp"

namespace yulesimon {

namespace {

constexpr std::size_t kAdaptWindow = 50;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

// Fills eta with the linear predictor; false if any entry hits the guard.
bool linear_predictor(const RegressionDesign& design, std::span<const double> beta,
                      std::vector<double>& eta) {
  eta.resize(design.n());
  bool ok = true;
  for (std::size_t i = 0; i < design.n(); ++i) {
    eta[i] = dot(design.row(i), beta);
    if (!(std::abs(eta[i]) < kLinkGuard)) ok = false;
  }
  return ok;
}

}  // namespace

RegressionDesign::RegressionDesign(std::vector<Count> k, std::vector<double> x,
                                   std::size_t n_beta)
    : k_(std::move(k)), x_(std::move(x)), n_beta_(n_beta) {
  if (n_beta_ == 0) throw DataError("regression needs at least the intercept");
  if (k_.empty()) throw DataError("regression design has no observations");
  if (x_.size() != k_.size() * n_beta_)
    throw DataError("regressor matrix has " + std::to_string(x_.size()) + " entries, expected " +
                    std::to_string(k_.size() * n_beta_));
  if (k_.size() < n_beta_) throw DataError("fewer observations than coefficients");
  for (std::size_t i = 0; i < k_.size(); ++i) {
    if (k_[i] < 1) throw DataError("count on row " + std::to_string(i) + " is below 1");
    if (x_[i * n_beta_] != 1.0)
      throw DataError("first regressor column must be the constant 1 (row " +
                      std::to_string(i) + ")");
    for (std::size_t j = 0; j < n_beta_; ++j)
      if (!std::isfinite(x_[i * n_beta_ + j]))
        throw DataError("non-finite regressor on row " + std::to_string(i));
  }
}

void RegressionConfig::validate(std::size_t n_beta) const {
  chain.validate();
  if (!(proposal_scale > 0.0)) throw DomainError("proposal scale must be positive");
  if (!initial_beta.empty() && initial_beta.size() != n_beta)
    throw DomainError("initial beta has the wrong dimension");
}

double link(std::span<const double> x_row, std::span<const double> beta) {
  if (x_row.size() != beta.size())
    throw DomainError("link: regressor row has " + std::to_string(x_row.size()) +
                      " entries but beta has " + std::to_string(beta.size()));
  return std::exp(dot(x_row, beta));
}

double log_beta_conditional(std::span<const double> beta, std::span<const double> w,
                            const RegressionDesign& design, kernels::Exec exec) {
  if (beta.size() != design.n_beta()) throw DomainError("beta has the wrong dimension");
  if (w.size() != design.n()) throw DomainError("auxiliary vector has the wrong length");
  std::vector<double> eta;
  if (!linear_predictor(design, beta, eta)) return -std::numeric_limits<double>::infinity();
  return kernels::link_sum(eta, w, exec) - 0.5 * dot(beta, beta);
}

double acceptance_probability(double log_current, double log_proposed) {
  const double d = log_proposed - log_current;
  return d >= 0.0 ? 1.0 : std::exp(d);
}

MwgStepResult mwg_step(RngState& state, std::span<const double> beta,
                       const RegressionDesign& design, double proposal_scale,
                       kernels::Exec exec) {
  if (beta.size() != design.n_beta()) throw DomainError("beta has the wrong dimension");
  if (!(proposal_scale >= 0.0)) throw DomainError("proposal scale must be non-negative");

  std::vector<double> eta;
  if (!linear_predictor(design, beta, eta))
    throw DomainError("current beta puts the linear predictor outside the overflow guard");
  std::vector<double> rates(design.n());
  for (std::size_t i = 0; i < design.n(); ++i) rates[i] = std::exp(eta[i]);

  std::vector<double> w(design.n());
  kernels::aux_draw(state.next_u64(), rates, design.k(), w, exec);

  const double log_current = kernels::link_sum(eta, w, exec) - 0.5 * dot(beta, beta);
  MwgStepResult out;
  out.beta.assign(beta.begin(), beta.end());
  out.accepted = rw_metropolis_step(
      state, out.beta, proposal_scale, log_current, [&](std::span<const double> b) {
        const double l = log_beta_conditional(b, w, design, exec);
        if (l == -std::numeric_limits<double>::infinity()) out.guard_rejected = true;
        return l;
      });
  return out;
}

ChainTrace run_regression(const RegressionDesign& design, const RegressionConfig& cfg,
                          kernels::Exec exec) {
  cfg.validate(design.n_beta());
  const auto& chain = cfg.chain;

  std::vector<std::string> names;
  for (std::size_t j = 0; j < design.n_beta(); ++j) names.push_back("beta" + std::to_string(j));
  ChainTrace trace(std::move(names), chain);

  RngState state(chain.seed);
  std::vector<double> beta =
      cfg.initial_beta.empty() ? std::vector<double>(design.n_beta(), 0.0) : cfg.initial_beta;
  double scale = cfg.proposal_scale;
  std::size_t window_accepts = 0;
  std::size_t window_len = 0;
  std::size_t retained_accepts = 0;
  std::size_t guard_rejections = 0;

  for (std::size_t t = 1; t <= chain.iterations; ++t) {
    auto step = mwg_step(state, beta, design, scale, exec);
    beta = std::move(step.beta);
    if (step.guard_rejected) ++guard_rejections;

    if (t <= chain.burn_in) {
      if (cfg.adapt) {
        window_accepts += step.accepted ? 1 : 0;
        if (++window_len == kAdaptWindow) {
          const double rate = static_cast<double>(window_accepts) / kAdaptWindow;
          if (rate < 0.2) scale *= 0.75;
          else if (rate > 0.4) scale *= 1.33;
          window_accepts = 0;
          window_len = 0;
        }
      }
    } else if (step.accepted) {
      ++retained_accepts;
    }
    if (chain.keeps(t)) trace.push(beta, t);
  }

  const auto post = chain.iterations - chain.burn_in;
  trace.metadata["acceptance_rate"] =
      static_cast<double>(retained_accepts) / static_cast<double>(post);
  trace.metadata["proposal_scale"] = scale;
  trace.metadata["guard_rejections"] = static_cast<double>(guard_rejections);
  return trace;
}

RegressionDesign simulate_regression_data(RngState& state, std::span<const double> beta_true,
                                          std::size_t n) {
  if (n == 0) throw DomainError("simulate_regression_data needs n >= 1");
  if (beta_true.empty()) throw DomainError("beta_true must contain the intercept");
  const std::size_t p = beta_true.size();
  std::vector<double> x(n * p);
  std::vector<Count> k(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = std::span<double>(x).subspan(i * p, p);
    r[0] = 1.0;
    for (std::size_t j = 1; j < p; ++j) r[j] = state.next_uniform();
    k[i] = sample(state, YuleSimonParam(link(r, beta_true)));
  }
  return RegressionDesign(std::move(k), std::move(x), p);
}

}  // namespace yulesimon
