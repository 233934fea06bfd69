#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "stat_helpers.hpp"
#include "yulesimon/error.hpp"
#include "yulesimon/gibbs.hpp"
#include "yulesimon/regression.hpp"

using namespace yulesimon;
using doctest::Approx;

namespace {

RegressionDesign intercept_only(std::vector<Count> k) {
  std::vector<double> x(k.size(), 1.0);
  return RegressionDesign(std::move(k), std::move(x), 1);
}

}  // namespace

TEST_CASE("link") {
  const std::vector<double> zero = {0.0, 0.0};
  const std::vector<double> r1 = {1.0, 0.3};
  CHECK(link(r1, zero) == 1.0);
  CHECK(link(std::vector<double>{1.0, 0.0}, std::vector<double>{1.5, -1.0}) ==
        Approx(4.4816890703380645));
  CHECK(link(std::vector<double>{1.0, 1.0}, std::vector<double>{-0.5, 5.0}) ==
        Approx(std::exp(4.5)));
  CHECK_THROWS_AS(link(r1, std::vector<double>{1.0}), DomainError);
}

TEST_CASE("design validation") {
  CHECK_THROWS_AS(RegressionDesign({1, 2}, {1.0, 0.5, 2.0, 0.1}, 2), DataError);  // x[1,0] != 1
  CHECK_THROWS_AS(RegressionDesign({1, 0}, {1.0, 1.0}, 1), DataError);
  CHECK_THROWS_AS(RegressionDesign({1}, {1.0, 0.2}, 2), DataError);  // n < n_beta
  CHECK_THROWS_AS(RegressionDesign({}, {}, 1), DataError);
}

TEST_CASE("log_beta_conditional") {
  const RegressionDesign d({1, 3, 2}, {1.0, 0.2, 1.0, 0.7, 1.0, 0.9}, 2);
  const std::vector<double> w = {0.4, 1.1, 0.25};
  CHECK(log_beta_conditional(std::vector<double>{0.0, 0.0}, w, d) == Approx(-1.75));

  const std::vector<double> beta = {0.3, -0.8};
  double expect = -0.5 * (0.09 + 0.64);
  for (std::size_t i = 0; i < 3; ++i) {
    const double eta = 0.3 - 0.8 * d.row(i)[1];
    expect += eta - std::exp(eta) * w[i];
  }
  CHECK(log_beta_conditional(beta, w, d) == Approx(expect).epsilon(1e-14));

  // Acceptance depends only on differences of the log target.
  const std::vector<double> other = {0.1, 0.4};
  const double l1 = log_beta_conditional(beta, w, d), l2 = log_beta_conditional(other, w, d);
  CHECK(acceptance_probability(l1, l2) == Approx(acceptance_probability(l1 + 123.4, l2 + 123.4)));
  CHECK(acceptance_probability(std::min(l1, l2), std::max(l1, l2)) == 1.0);

  // Overflow guard.
  CHECK(log_beta_conditional(std::vector<double>{800.0, 0.0}, w, d) ==
        -std::numeric_limits<double>::infinity());
}

TEST_CASE("MH kernel preserves a two-point target") {
  // Frozen w; states beta_a and beta_b, proposal always the other state.
  const RegressionDesign d({2, 1, 5, 1}, {1.0, 0.1, 1.0, 0.4, 1.0, 0.8, 1.0, 0.3}, 2);
  const std::vector<double> w = {0.7, 0.2, 1.9, 0.5};
  const std::vector<double> ba = {0.2, -0.3}, bb = {-0.4, 0.9};
  const double la = log_beta_conditional(ba, w, d), lb = log_beta_conditional(bb, w, d);
  const double pa = 1.0 / (1.0 + std::exp(lb - la)), pb = 1.0 - pa;
  const double ab = acceptance_probability(la, lb), ba_ = acceptance_probability(lb, la);
  const double P[2][2] = {{1.0 - ab, ab}, {ba_, 1.0 - ba_}};
  CHECK(pa * P[0][0] + pb * P[1][0] == Approx(pa).epsilon(1e-14));
  CHECK(pa * P[0][1] + pb * P[1][1] == Approx(pb).epsilon(1e-14));
  CHECK(pa * P[0][1] == Approx(pb * P[1][0]).epsilon(1e-14));
}

TEST_CASE("zero proposal scale never moves beta") {
  const auto d = intercept_only({1, 2, 5, 1});
  RngState rng(4);
  std::vector<double> beta = {0.37};
  for (int i = 0; i < 200; ++i) {
    const auto step = mwg_step(rng, beta, d, 0.0);
    CHECK(step.accepted);
    CHECK(step.beta == beta);
  }
}

TEST_CASE("random-walk Metropolis on the prior alone recovers N(0, I)") {
  RngState rng(8);
  std::vector<double> x = {0.0, 0.0};
  auto target = [](std::span<const double> b) { return -0.5 * (b[0] * b[0] + b[1] * b[1]); };
  std::vector<double> c0, c1;
  double cur = target(x);
  for (int t = 0; t < 400000; ++t) {
    if (rw_metropolis_step(rng, x, 1.7, cur, target)) cur = target(x);
    if (t >= 10000) {
      c0.push_back(x[0]);
      c1.push_back(x[1]);
    }
  }
  CHECK(std::abs(testutil::mean_of(c0)) < 3.0 * testutil::batch_means_se(c0));
  CHECK(std::abs(testutil::mean_of(c1)) < 3.0 * testutil::batch_means_se(c1));
  CHECK(testutil::variance_of(c0) == Approx(1.0).epsilon(0.05));
  CHECK(testutil::variance_of(c1) == Approx(1.0).epsilon(0.05));
}

TEST_CASE("intercept-only posterior matches quadrature") {
  // beta ~ N(0,1), k = 2 ~ YuleSimon(exp(beta)).
  auto post = [](double b) {
    const double r = std::exp(b);
    return std::exp(-0.5 * b * b) * r / ((r + 1.0) * (r + 2.0));
  };
  // The N(0,1) factor makes the mass outside [-15, 15] negligible.
  using boost::math::quadrature::gauss_kronrod;
  const double z = gauss_kronrod<double, 61>::integrate(post, -15.0, 15.0, 10, 1e-13);
  const double m = gauss_kronrod<double, 61>::integrate(
                       [&](double b) { return b * post(b); }, -15.0, 15.0, 10, 1e-13) /
                   z;

  RegressionConfig cfg;
  cfg.chain.iterations = 410000;
  cfg.chain.burn_in = 10000;
  cfg.chain.seed = 21;
  cfg.proposal_scale = 1.5;
  const auto trace = run_regression(intercept_only({2}), cfg);
  const auto draws = trace.column(0);
  const double se = testutil::batch_means_se(draws);
  CAPTURE(m);
  CAPTURE(testutil::mean_of(draws));
  CAPTURE(se);
  CHECK(std::abs(testutil::mean_of(draws) - m) < 3.0 * se);
}

TEST_CASE("simulate_regression_data") {
  SUBCASE("beta = 0 gives rho = 1 and P(k=1) = 1/2") {
    RngState rng(1);
    const auto d = simulate_regression_data(rng, std::vector<double>{0.0}, 100000);
    double ones = 0.0;
    for (Count k : d.k()) ones += k == 1;
    CHECK(std::abs(ones / 100000.0 - 0.5) < 0.01);
  }
  SUBCASE("deterministic") {
    RngState a(3), b(3);
    const std::vector<double> beta = {1.5, -1.0};
    const auto d1 = simulate_regression_data(a, beta, 50);
    const auto d2 = simulate_regression_data(b, beta, 50);
    CHECK(std::vector<Count>(d1.k().begin(), d1.k().end()) ==
          std::vector<Count>(d2.k().begin(), d2.k().end()));
    CHECK(std::vector<double>(d1.x().begin(), d1.x().end()) ==
          std::vector<double>(d2.x().begin(), d2.x().end()));
  }
  SUBCASE("mean link value matches the integral over U(0,1)") {
    RngState rng(5);
    const std::vector<double> beta = {-0.5, 5.0};
    const auto d = simulate_regression_data(rng, beta, 10000);
    double s = 0.0;
    for (std::size_t i = 0; i < d.n(); ++i) s += link(d.row(i), beta);
    const double exact = (std::exp(4.5) - std::exp(-0.5)) / 5.0;
    CHECK(std::abs(s / 10000.0 - exact) < 0.03 * exact);
  }
}

TEST_CASE("tuned acceptance rate on the (-0.5, 5) scenario") {
  RngState rng(100);
  const auto d = simulate_regression_data(rng, std::vector<double>{-0.5, 5.0}, 100);
  RegressionConfig cfg;
  cfg.chain.iterations = 20000;
  cfg.chain.burn_in = 5000;
  cfg.chain.seed = 3;
  const auto trace = run_regression(d, cfg);
  const double acc = trace.metadata.at("acceptance_rate");
  CHECK(acc > 0.1);
  CHECK(acc < 0.6);
  CHECK(trace.size() == 15000);
  CHECK(trace.parameter_names() == std::vector<std::string>{"beta0", "beta1"});
  CHECK(run_regression(d, cfg) == trace);
}

TEST_CASE("regression recovers (1.5, -1.0) at n = 500") {
  RngState rng(2500);
  const std::vector<double> truth = {1.5, -1.0};
  const auto d = simulate_regression_data(rng, truth, 500);
  RegressionConfig cfg;
  cfg.chain.iterations = 20000;
  cfg.chain.burn_in = 4000;
  cfg.chain.seed = 9;
  const auto trace = run_regression(d, cfg);
  for (std::size_t j = 0; j < 2; ++j) {
    const auto col = trace.column(j);
    CHECK(std::abs(testutil::mean_of(col) - truth[j]) < 0.2);
  }
}

TEST_CASE("guard rejections are counted, not fatal") {
  // Huge regressor values push proposals past the overflow guard.
  const RegressionDesign d({1, 2, 1}, {1.0, 3000.0, 1.0, 2900.0, 1.0, 3100.0}, 2);
  RegressionConfig cfg;
  cfg.chain.iterations = 400;
  cfg.chain.burn_in = 100;
  cfg.proposal_scale = 0.5;
  cfg.adapt = false;
  const auto trace = run_regression(d, cfg);
  CHECK(trace.metadata.at("guard_rejections") > 0.0);
  for (std::size_t r = 0; r < trace.size(); ++r)
    for (std::size_t i = 0; i < d.n(); ++i)
      REQUIRE(std::abs(trace.at(r, 0) + trace.at(r, 1) * d.row(i)[1]) < kLinkGuard);
}
