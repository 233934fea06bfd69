#include <doctest.h>

#include <cmath>
#include <vector>

#include "yulesimon/diagnostics.hpp"
#include "yulesimon/error.hpp"
#include "yulesimon/gibbs.hpp"
#include "yulesimon/rng.hpp"

using namespace yulesimon;
using doctest::Approx;

namespace {

std::vector<double> normals(std::uint64_t seed, std::size_t n, double mu = 0.0, double sd = 1.0) {
  RngState rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = mu + sd * rng.next_normal();
  return out;
}

// Direct evaluation of the textbook formula, without flooring.
double rhat_raw(const std::vector<std::vector<double>>& chains) {
  const double m = static_cast<double>(chains.size());
  const double l = static_cast<double>(chains[0].size());
  std::vector<double> means;
  double w = 0.0;
  for (const auto& c : chains) {
    double s = 0.0;
    for (double x : c) s += x;
    const double mu = s / l;
    means.push_back(mu);
    double ss = 0.0;
    for (double x : c) ss += (x - mu) * (x - mu);
    w += ss / (l - 1.0) / m;
  }
  double grand = 0.0;
  for (double mu : means) grand += mu / m;
  double b = 0.0;
  for (double mu : means) b += (mu - grand) * (mu - grand);
  b *= l / (m - 1.0);
  return std::sqrt(((l - 1.0) / l * w + b / l) / w);
}

}  // namespace

TEST_CASE("R-hat of identical chains floors at 1") {
  const auto c = normals(1, 500);
  const std::vector<std::vector<double>> chains = {c, c};
  CHECK(rhat_raw(chains) == Approx(std::sqrt(499.0 / 500.0)));
  CHECK(gelman_rubin(chains) == 1.0);
}

TEST_CASE("R-hat flags separated chains") {
  const std::vector<std::vector<double>> chains = {normals(2, 1000, 0.0), normals(3, 1000, 10.0)};
  const double r = gelman_rubin(chains);
  CHECK(r == Approx(rhat_raw(chains)).epsilon(1e-12));
  CHECK(r > 1.1);
}

TEST_CASE("R-hat is affine invariant") {
  std::vector<std::vector<double>> chains = {normals(4, 800, 0.0), normals(5, 800, 0.3),
                                             normals(6, 800, -0.2)};
  const double r0 = gelman_rubin(chains);
  for (auto& c : chains)
    for (auto& x : c) x = -3.5 * x + 17.0;
  CHECK(gelman_rubin(chains) == Approx(r0).epsilon(1e-10));
}

TEST_CASE("R-hat errors") {
  const std::vector<std::vector<double>> one = {normals(1, 10)};
  CHECK_THROWS_AS(gelman_rubin(one), DomainError);
  const std::vector<std::vector<double>> flat = {std::vector<double>(10, 1.0),
                                                 std::vector<double>(10, 2.0)};
  CHECK_THROWS_AS(gelman_rubin(flat), DegenerateError);
  const std::vector<std::vector<double>> ragged = {normals(1, 10), normals(2, 11)};
  CHECK_THROWS_AS(gelman_rubin(ragged), DomainError);
}

TEST_CASE("R-hat below 1.01 for three converged Gibbs chains") {
  RngState rng(12);
  const auto data = simulate_counts(rng, YuleSimonParam(1.1), 2000);
  ChainConfig cfg;
  cfg.iterations = 10000;
  cfg.burn_in = 1000;
  cfg.seed = 8;
  const auto traces = run_chains(data, {0.25, 0.05}, cfg, 3);
  std::vector<std::vector<double>> chains;
  for (const auto& t : traces) chains.push_back(t.column(0));
  CHECK(gelman_rubin(chains) < 1.01);
}

TEST_CASE("Geweke on iid normal input") {
  int inside = 0;
  const int reps = 400;
  for (int r = 0; r < reps; ++r) inside += std::abs(geweke(normals(1000 + r, 10000))) < 3.0;
  CHECK(inside >= 0.99 * reps);
}

TEST_CASE("Geweke detects a shifted start") {
  auto x = normals(7, 5000);
  for (std::size_t i = 0; i < 500; ++i) x[i] += 10.0;
  CHECK(std::abs(geweke(x)) > 5.0);
}

TEST_CASE("Geweke: reversal flips the sign in plain-variance mode") {
  const auto x = normals(9, 3000, 0.0, 1.0);
  GewekeOptions opts;
  opts.frac_first = 0.3;
  opts.frac_last = 0.3;
  opts.plain_variance = true;
  const std::vector<double> rev(x.rbegin(), x.rend());
  CHECK(geweke(rev, opts) == Approx(-geweke(x, opts)).epsilon(1e-9));
}

TEST_CASE("Geweke invariances") {
  const auto x = normals(10, 4000);
  const double z = geweke(x);
  auto shifted = x, scaled = x;
  for (auto& v : shifted) v += 1e3;
  for (auto& v : scaled) v *= -7.0;
  CHECK(geweke(shifted) == Approx(z).epsilon(1e-6));
  CHECK(std::abs(geweke(scaled)) == Approx(std::abs(z)).epsilon(1e-10));
}

TEST_CASE("Geweke errors") {
  CHECK_THROWS_AS(geweke(normals(1, 50)), DomainError);  // first segment has 5 samples
  CHECK_THROWS_AS(geweke(std::vector<double>(1000, 3.0)), DegenerateError);
  GewekeOptions overlap;
  overlap.frac_first = 0.6;
  CHECK_THROWS_AS(geweke(normals(1, 1000), overlap), DomainError);
}

TEST_CASE("progressive mean") {
  CHECK(progressive_mean(std::vector<double>(4, 2.0)) == std::vector<double>(4, 2.0));
  CHECK(progressive_mean(std::vector<double>{1, 2, 3}) == std::vector<double>{1, 1.5, 2});
  const auto x = normals(3, 257);
  const auto run = progressive_mean(x);
  for (std::size_t t = 1; t <= x.size(); ++t) {
    double s = 0.0;
    for (std::size_t i = 0; i < t; ++i) s += x[i];
    REQUIRE(run[t - 1] == s / static_cast<double>(t));
  }
  CHECK(run.back() == summarize(std::span<const double>(x)).mean);
  CHECK_THROWS_AS(progressive_mean(std::vector<double>{}), DomainError);
}

TEST_CASE("diagnose bundles everything") {
  const std::vector<std::vector<double>> chains = {normals(1, 600), normals(2, 600)};
  const auto r = diagnose("rho", chains);
  CHECK(r.has_rhat);
  CHECK(r.geweke_z.size() == 2);
  CHECK(r.progressive_means[1].size() == 600);
  const std::vector<std::size_t> lengths = {100, 300, 600};
  const auto by_prefix = gelman_rubin_by_prefix(chains, lengths);
  CHECK(by_prefix.size() == 3);
  CHECK(by_prefix.back() == r.rhat);
}
