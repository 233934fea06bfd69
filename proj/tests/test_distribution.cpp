#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "stat_helpers.hpp"
#include "yulesimon/distribution.hpp"
#include "yulesimon/error.hpp"

using namespace yulesimon;
using doctest::Approx;

TEST_CASE("log_beta_fn closed forms") {
  CHECK(log_beta_fn(1.0, 1.0) == Approx(0.0).epsilon(1e-15));
  for (double rho : {0.1, 0.8, 5.0, 123.0})
    CHECK(log_beta_fn(1.0, rho + 1.0) == Approx(-std::log(rho + 1.0)).epsilon(1e-14));
  // B(3,2) = 2! 1! / 4! = 1/12
  CHECK(log_beta_fn(3.0, 2.0) == Approx(std::log(1.0 / 12.0)).epsilon(1e-14));
  CHECK_THROWS_AS(log_beta_fn(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(log_beta_fn(1.0, -3.0), DomainError);
}

TEST_CASE("pmf at rho = 1 is 1/(k(k+1))") {
  CHECK(pmf(1, YuleSimonParam(1.0)) == Approx(0.5).epsilon(1e-14));
  CHECK(pmf(3, YuleSimonParam(1.0)) == Approx(1.0 / 12.0).epsilon(1e-14));
  for (Count k = 1; k <= 50; ++k)
    CHECK(pmf(k, YuleSimonParam(1.0)) == Approx(1.0 / (k * (k + 1.0))).epsilon(1e-13));
}

TEST_CASE("pmf sums to one") {
  const YuleSimonParam p(5.0);
  double s = 0.0;
  for (Count k = 1; k <= 10000; ++k) s += pmf(k, p);
  CHECK(std::abs(s - 1.0) < 1e-6);
}

TEST_CASE("ccdf") {
  const YuleSimonParam one(1.0);
  CHECK(ccdf(1, one) == Approx(0.5).epsilon(1e-14));
  // 1 - 1/2 - 1/6
  CHECK(ccdf(2, one) == Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("normalisation: partial pmf sums plus ccdf equal one") {
  for (double rho : {0.1, 0.8, 1.0, 5.0, 10.0}) {
    const YuleSimonParam p(rho);
    double s = 0.0;
    for (Count k = 1; k <= 1000; ++k) {
      s += pmf(k, p);
      if (k <= 20 || k % 97 == 0 || k == 1000) {
        CAPTURE(rho);
        CAPTURE(k);
        CHECK(std::abs(s + ccdf(k, p) - 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("mixture identity: geometric-exponential integral equals the pmf") {
  using boost::math::quadrature::gauss_kronrod;
  for (double rho : {0.5, 1.0, 5.0}) {
    // Integrand bounded by rho e^{-(rho+1)w}; tail beyond w_max is < 1e-13.
    const double w_max = (std::log(rho / (rho + 1.0)) + 13.0 * std::log(10.0)) / (rho + 1.0);
    for (Count k = 1; k <= 10; ++k) {
      const auto f = [&](double w) {
        return std::exp(-w) * std::pow(-std::expm1(-w), static_cast<double>(k - 1)) * rho *
               std::exp(-rho * w);
      };
      double err = 0.0;
      const double q = gauss_kronrod<double, 61>::integrate(f, 0.0, w_max, 15, 1e-14, &err);
      CAPTURE(rho);
      CAPTURE(k);
      CHECK(std::abs(q - pmf(k, YuleSimonParam(rho))) < 1e-8);
    }
  }
}

TEST_CASE("pmf is strictly decreasing in k") {
  for (double rho : {0.05, 0.8, 1.0, 5.0, 50.0}) {
    const YuleSimonParam p(rho);
    for (Count k = 1; k < 2000; ++k) REQUIRE(log_pmf(k + 1, p) < log_pmf(k, p));
  }
}

TEST_CASE("log pmf stays finite for huge k and rho") {
  for (Count k : {1ULL, 1000ULL, 1000000ULL, 1000000000ULL})
    for (double rho : {0.01, 1.0, 100.0, 1000.0}) {
      const double lp = log_pmf(k, YuleSimonParam(rho));
      CHECK(std::isfinite(lp));
      CHECK(lp < 0.0);
    }
  // Tail exponent: log f(k) ~ log(rho Gamma(rho+1)) - (rho+1) log k.
  const double rho = 1000.0;
  const double k = 1e9;
  const double asym = std::log(rho) + std::lgamma(rho + 1.0) - (rho + 1.0) * std::log(k);
  CHECK(log_pmf(1000000000ULL, YuleSimonParam(rho)) == Approx(asym).epsilon(1e-3));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(YuleSimonParam(0.0), DomainError);
  CHECK_THROWS_AS(YuleSimonParam(-1.0), DomainError);
  CHECK_THROWS_AS(pmf(0, YuleSimonParam(1.0)), DomainError);
  CHECK_THROWS_AS(ccdf(0, YuleSimonParam(1.0)), DomainError);
}

TEST_CASE("mixture sampler goodness of fit") {
  for (double rho : {0.8, 5.0}) {
    CAPTURE(rho);
    const YuleSimonParam p(rho);
    RngState rng(2024 + static_cast<std::uint64_t>(rho * 10));
    const int n = 100000;
    std::vector<double> obs(21, 0.0), expct(21, 0.0);
    double total_p = 0.0;
    double ones = 0.0, sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const Count k = sample(rng, p);
      REQUIRE(k >= 1);
      obs[std::min<Count>(k, 21) - 1] += 1.0;
      ones += k == 1;
      sum += static_cast<double>(k);
    }
    for (Count k = 1; k <= 20; ++k) {
      expct[k - 1] = n * pmf(k, p);
      total_p += pmf(k, p);
    }
    expct[20] = n * (1.0 - total_p);
    // Merge sparse bins so every expected count is at least 5.
    std::vector<double> o, e;
    double oa = 0, ea = 0;
    for (std::size_t b = 0; b < obs.size(); ++b) {
      oa += obs[b];
      ea += expct[b];
      if (ea >= 5.0) {
        o.push_back(oa);
        e.push_back(ea);
        oa = ea = 0;
      }
    }
    if (ea > 0) {
      o.back() += oa;
      e.back() += ea;
    }
    CHECK(testutil::chi_square_pvalue(o, e) > 0.001);
    if (rho == 5.0) {
      CHECK(std::abs(ones / n - 5.0 / 6.0) < 0.01);
      // Truncated-sum oracle for the mean.
      double m = 0.0;
      for (Count k = 1; k <= 100000; ++k) m += static_cast<double>(k) * pmf(k, p);
      CHECK(m == Approx(1.25).epsilon(1e-6));
      CHECK(std::abs(sum / n - m) < 0.05 * m);
    }
  }
}
