#include "yulesimon/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "yulesimon/error.hpp"

namespace yulesimon {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

// Above this count the product-of-exponentials route costs more than two
// gamma draws.
constexpr std::uint64_t kDirectNegLogBetaMax = 24;

double gamma_unit_shape_ge1(RngState& state, double shape) {
  // Marsaglia & Tsang (2000).
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = state.next_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = state.next_uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double gamma_unit(RngState& state, double shape) {
  if (shape >= 1.0) return gamma_unit_shape_ge1(state, shape);
  // Gamma(a) = Gamma(a + 1) * U^(1/a), evaluated in log space.
  const double g = gamma_unit_shape_ge1(state, shape + 1.0);
  const double log_u = std::log(state.next_uniform());
  const double x = std::exp(std::log(g) + log_u / shape);
  return std::max(x, std::numeric_limits<double>::denorm_min());
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return mix64(mix64(parent) ^ mix64(index + 0xD1B54A32D192ED03ULL));
}

std::uint64_t hash_label(std::string_view label) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

RngState::RngState(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  std::uint64_t x = derive_seed(seed, stream);
  for (auto& word : s_) {
    x += 0x9E3779B97F4A7C15ULL;
    word = mix64(x);
  }
  // xoshiro must not start from the all-zero state.
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t RngState::next_u64() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngState::next_uniform() noexcept {
  // Midpoints of a 2^-53 grid: smallest 2^-54, largest 1 - 2^-54.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngState::next_normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u;
  double v;
  double s;
  do {
    u = 2.0 * next_uniform() - 1.0;
    v = 2.0 * next_uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  has_spare_ = true;
  return u * f;
}

double RngState::next_exponential() noexcept { return -std::log(next_uniform()); }

double sample_gamma(RngState& state, double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0) || !std::isfinite(shape) || !std::isfinite(rate))
    throw DomainError("sample_gamma: shape and rate must be positive, got shape=" +
                      std::to_string(shape) + " rate=" + std::to_string(rate));
  const double x = gamma_unit(state, shape) / rate;
  return std::max(x, std::numeric_limits<double>::denorm_min());
}

double sample_beta(RngState& state, double alpha, double beta_param) {
  if (!(alpha > 0.0) || !(beta_param > 0.0))
    throw DomainError("sample_beta: parameters must be positive, got alpha=" +
                      std::to_string(alpha) + " beta=" + std::to_string(beta_param));
  const double g1 = gamma_unit(state, alpha);
  const double g2 = gamma_unit(state, beta_param);
  double t = g1 / (g1 + g2);
  if (t >= 1.0) t = std::nextafter(1.0, 0.0);
  if (t <= 0.0) t = std::numeric_limits<double>::denorm_min();
  return t;
}

std::uint64_t sample_geometric_log_fail(RngState& state, double log_fail) {
  if (!(log_fail <= 0.0)) throw DomainError("sample_geometric: log(1-p) must be <= 0");
  if (log_fail == -std::numeric_limits<double>::infinity()) return 1;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (log_fail == 0.0) return kMax;
  // P(K > k) = (1-p)^k, so K = 1 + floor(log U / log(1-p)).
  const double trials = std::floor(std::log(state.next_uniform()) / log_fail);
  if (!(trials < 0x1.0p64 - 1.0)) return kMax;
  return 1 + static_cast<std::uint64_t>(trials);
}

std::uint64_t sample_geometric(RngState& state, double p) {
  if (!(p > 0.0) || !(p <= 1.0))
    throw DomainError("sample_geometric: p must lie in (0, 1], got " + std::to_string(p));
  if (p == 1.0) return 1;
  return sample_geometric_log_fail(state, std::log1p(-p));
}

double sample_neg_log_beta(RngState& state, double alpha, std::uint64_t k) {
  if (!(alpha > 0.0)) throw DomainError("sample_neg_log_beta: alpha must be positive");
  if (k == 0) throw DomainError("sample_neg_log_beta: k must be >= 1");
  if (k <= kDirectNegLogBetaMax) {
    // Beta(alpha, k) = prod_{j<k} Beta(alpha + j, 1), and -log Beta(c, 1) ~ Exp(c).
    double w = 0.0;
    for (std::uint64_t j = 0; j < k; ++j)
      w += state.next_exponential() / (alpha + static_cast<double>(j));
    return w;
  }
  // T = G1 / (G1 + G2)  =>  -log T = log1p(G2 / G1).
  const double g1 = gamma_unit(state, alpha);
  const double g2 = gamma_unit(state, static_cast<double>(k));
  return std::log1p(g2 / g1);
}

}  // namespace yulesimon
