#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "sdskgo/quadrature.hpp"

using namespace sdskgo;
using oracle::big;

TEST(GaussJacobi, SingleNodeLegendre) {
  const auto rule = poly::gauss_jacobi_rule(1, 0.0, 0.0);
  ASSERT_EQ(rule.size(), 1u);
  EXPECT_NEAR(rule.nodes[0], 0.0, 1e-15);
  EXPECT_NEAR(rule.weights[0], 2.0, 1e-14);
}

TEST(GaussJacobi, LegendreSecondMoment) {
  const auto rule = poly::gauss_jacobi_rule(20, 0.0, 0.0);
  EXPECT_NEAR(rule.integrate([](double y) { return y * y; }), 2.0 / 3.0, 1e-14);
}

TEST(GaussJacobi, RejectsBadInput) {
  EXPECT_THROW(poly::gauss_jacobi_rule(0, 0.0, 0.0), DomainError);
  EXPECT_THROW(poly::gauss_jacobi_rule(4, -1.0, 0.0), DomainError);
  EXPECT_THROW(poly::gauss_jacobi_rule(4, 0.0, -1.5), DomainError);
}

namespace {

// int_{-1}^{1} y^k (1-y)^a (1+y)^b dy via the binomial expansion of y = (1+y) - 1
// in Beta integrals, evaluated in 50 digits.
big jacobi_moment(int k, big a, big b) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  big sum = 0;
  for (int j = 0; j <= k; ++j) {
    // y^k = sum_j C(k,j) (1+y)^j (-1)^{k-j}
    const big beta = exp(oracle::lgamma(a + 1) + oracle::lgamma(b + j + 1) - oracle::lgamma(a + b + j + 2) +
                         (a + b + j + 1) * log(big(2)));
    const big c = exp(oracle::lgamma(big(k + 1)) - oracle::lgamma(big(j + 1)) - oracle::lgamma(big(k - j + 1)));
    sum += ((k - j) % 2 ? -c : c) * beta;
  }
  return sum;
}

}  // namespace

TEST(GaussJacobi, ExactMoments) {
  for (auto [a, b] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {0.5, 1.5}, {-0.5, -0.5}, {2.0, 7.5}})
    for (std::size_t n : {1u, 3u, 8u}) {
      const auto rule = poly::gauss_jacobi_rule(n, a, b);
      for (int k = 0; k <= static_cast<int>(2 * n - 1); ++k) {
        const double ref = static_cast<double>(jacobi_moment(k, big(a), big(b)));
        const double got = rule.integrate([&](double y) { return std::pow(y, k); });
        EXPECT_NEAR(got, ref, 1e-12 * std::max(1.0, std::abs(ref))) << "a=" << a << " b=" << b << " k=" << k;
      }
    }
}

TEST(GaussJacobi, StructuralInvariants) {
  for (auto [a, b] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {3.0, 0.5}, {99.5, 99.5}, {4999.5, 1.0}})
    for (std::size_t n : {2u, 17u, 40u}) {
      const auto rule = poly::gauss_jacobi_rule(n, a, b);
      ASSERT_EQ(rule.size(), n);
      double psum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_GT(rule.nodes[i], -1.0);
        EXPECT_LT(rule.nodes[i], 1.0);
        if (i) EXPECT_GT(rule.nodes[i], rule.nodes[i - 1]);
        EXPECT_GT(rule.probabilities[i], 0.0);
        psum += rule.probabilities[i];
      }
      EXPECT_NEAR(psum, 1.0, 1e-12);
      const big mass = oracle::lgamma(big(a) + 1) + oracle::lgamma(big(b) + 1) - oracle::lgamma(big(a) + b + 2) +
                       (big(a) + b + 1) * log(big(2));
      EXPECT_NEAR(rule.log_mass, static_cast<double>(mass), 1e-12 * std::max(1.0, std::abs(rule.log_mass)));
    }
}

TEST(GaussJacobi, WeightsSumToMass) {
  for (auto [a, b] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {1.5, 0.5}, {10.0, 2.0}}) {
    const auto rule = poly::gauss_jacobi_rule(12, a, b);
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    EXPECT_NEAR(sum / std::exp(rule.log_mass), 1.0, 1e-12);
  }
}

TEST(GaussJacobi, GegenbauerNormClosedForm) {
  for (double nu : {1.2, 5.0, 100.0}) {
    const auto rule = poly::gauss_jacobi_rule(64, nu - 0.5, nu - 0.5);
    for (std::int64_t n = 0; n <= 10; ++n) {
      const double avg = rule.average([&](double q) {
        const double c = poly::gegenbauer(n, nu, q);
        return c * c;
      });
      const double log_got = std::log(avg) + rule.log_mass;
      const double log_ref = static_cast<double>(oracle::log_gegenbauer_norm(n, big(nu)));
      EXPECT_NEAR(std::exp(log_got - log_ref), 1.0, 1e-10) << "n=" << n << " nu=" << nu;
    }
  }
}

TEST(GaussJacobi, JacobiOrthogonality) {
  for (auto [a, b] : std::vector<std::pair<double, double>>{{0.5, 1.5}, {9.5, 0.0}}) {
    const auto rule = poly::gauss_jacobi_rule(32, a, b);
    for (std::int64_t n = 0; n <= 20; ++n) {
      const double nn = rule.average([&](double z) { return std::pow(poly::jacobi(n, a, b, z), 2); });
      for (std::int64_t m = 0; m < n; ++m) {
        const double nm = rule.average([&](double z) { return poly::jacobi(n, a, b, z) * poly::jacobi(m, a, b, z); });
        EXPECT_LE(std::abs(nm), 1e-10 * nn) << n << "," << m;
      }
    }
  }
}

TEST(GaussJacobi, GegenbauerOrthogonality) {
  const double nu = 2.5;
  const auto rule = poly::gauss_jacobi_rule(32, nu - 0.5, nu - 0.5);
  for (std::int64_t n = 0; n <= 20; ++n) {
    const double nn = rule.average([&](double q) { return std::pow(poly::gegenbauer(n, nu, q), 2); });
    for (std::int64_t m = 0; m < n; ++m) {
      const double nm = rule.average([&](double q) { return poly::gegenbauer(n, nu, q) * poly::gegenbauer(m, nu, q); });
      EXPECT_LE(std::abs(nm), 1e-10 * nn);
    }
  }
}

TEST(GaussJacobi, HermiteOrthogonalityOnTruncatedLine) {
  // exp(-x^2) H_n H_m on [-12, 12] with a 200-point Legendre rule
  const auto rule = poly::gauss_jacobi_rule(200, 0.0, 0.0);
  const double half = 12.0;
  auto inner = [&](std::int64_t n, std::int64_t m) {
    return half * rule.integrate([&](double y) {
      const double x = half * y;
      return std::exp(-x * x) * poly::hermite(n, x) * poly::hermite(m, x);
    });
  };
  for (std::int64_t n = 0; n <= 20; ++n) {
    const double nn = inner(n, n);
    EXPECT_NEAR(nn / (std::sqrt(std::numbers::pi) * std::pow(2.0, n) * std::tgamma(n + 1.0)), 1.0, 1e-10);
    for (std::int64_t m = 0; m < n; ++m) EXPECT_LE(std::abs(inner(n, m)), 1e-10 * nn);
  }
}
