#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "sdskgo/polynomials.hpp"

using namespace sdskgo;
using oracle::big;

TEST(Gegenbauer, ReferenceValues) {
  EXPECT_DOUBLE_EQ(poly::gegenbauer(0, 3.7, 0.2), 1.0);
  EXPECT_DOUBLE_EQ(poly::gegenbauer(1, 2.0, 0.5), 2.0);
  EXPECT_NEAR(poly::gegenbauer(2, 1.5, 0.3), -0.825, 1e-15);
}

TEST(Gegenbauer, MatchesExplicitSum) {
  for (double nu : {0.3, 1.2, 5.0, 100.0})
    for (std::int64_t n = 0; n <= 20; ++n)
      for (double x : {-0.9, -0.31, 0.0, 0.45, 0.99}) {
        const double ref = static_cast<double>(oracle::gegenbauer(n, big(nu), big(x)));
        EXPECT_NEAR(poly::gegenbauer(n, nu, x), ref, 1e-12 * std::max(1.0, std::abs(ref)))
            << "n=" << n << " nu=" << nu << " x=" << x;
      }
}

TEST(Jacobi, ReferenceValues) {
  EXPECT_DOUBLE_EQ(poly::jacobi(0, 0.5, 1.5, -0.3), 1.0);
  EXPECT_DOUBLE_EQ(poly::jacobi(1, 0.0, 0.0, 0.37), 0.37);
  EXPECT_NEAR(poly::jacobi(2, 1.0, 1.0, 1.0), 3.0, 1e-15);
}

TEST(Jacobi, EndpointValue) {
  for (double a : {-0.5, 0.0, 2.5, 40.0})
    for (std::int64_t n = 0; n <= 15; ++n) {
      // P_n^{(a,b)}(1) = Gamma(a+n+1) / (n! Gamma(a+1))
      const double ref = std::exp(std::lgamma(a + n + 1.0) - std::lgamma(n + 1.0) - std::lgamma(a + 1.0));
      EXPECT_NEAR(poly::jacobi(n, a, 0.7, 1.0) / ref, 1.0, 1e-12);
    }
}

TEST(Jacobi, MatchesExplicitSum) {
  for (auto [a, b] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {0.5, 1.5}, {-0.5, 3.0}, {99.5, 0.5}})
    for (std::int64_t n = 0; n <= 15; ++n)
      for (double z : {-0.95, -0.2, 0.3, 0.8}) {
        const double ref = static_cast<double>(oracle::jacobi(n, big(a), big(b), big(z)));
        EXPECT_NEAR(poly::jacobi(n, a, b, z), ref, 1e-11 * std::max(1.0, std::abs(ref)))
            << "n=" << n << " a=" << a << " b=" << b << " z=" << z;
      }
}

TEST(Hermite, ValuesAndExplicitSum) {
  EXPECT_DOUBLE_EQ(poly::hermite(0, 1.3), 1.0);
  EXPECT_DOUBLE_EQ(poly::hermite(2, 1.0), 2.0);
  for (std::int64_t n = 0; n <= 20; ++n)
    for (double x : {-2.5, -0.7, 0.0, 0.3, 3.1}) {
      const double ref = static_cast<double>(oracle::hermite(n, big(x)));
      EXPECT_NEAR(poly::hermite(n, x), ref, 1e-13 * std::max(1.0, std::abs(ref)));
    }
}

TEST(Hermite, GegenbauerLimit) {
  // nu^{-n/2} C_n^{nu/2}(x sqrt(2/nu)) -> H_n(x) / (sqrt(2^n) n!)
  auto lhs = [](std::int64_t n, double nu, double x) {
    return std::pow(nu, -0.5 * n) * poly::gegenbauer(n, 0.5 * nu, x * std::sqrt(2.0 / nu));
  };
  auto rhs = [](std::int64_t n, double x) {
    return poly::hermite(n, x) / (std::pow(2.0, 0.5 * n) * std::tgamma(n + 1.0));
  };
  for (std::int64_t n = 0; n <= 8; ++n) {
    double last = INFINITY;
    for (double nu : {1e3, 1e5, 1e7}) {
      double sup = 0.0;
      for (int i = -30; i <= 30; ++i) sup = std::max(sup, std::abs(lhs(n, nu, 0.1 * i) - rhs(n, 0.1 * i)));
      if (n > 0 && last > 1e-12) EXPECT_LT(sup, last) << "n=" << n << " nu=" << nu;
      last = sup;
    }
  }
  EXPECT_NEAR(lhs(6, 1e8, 0.7) / rhs(6, 0.7), 1.0, 1e-6);
}

namespace {

// Centered five-point first and second derivatives in long double.
template <typename F>
std::pair<long double, long double> derivatives(F f, long double x, long double h) {
  const long double fm2 = f(x - 2 * h), fm1 = f(x - h), f0 = f(x), fp1 = f(x + h), fp2 = f(x + 2 * h);
  const long double d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);
  const long double d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h);
  return {d1, d2};
}

}  // namespace

TEST(Gegenbauer, OdeResidual) {
  for (long double nu : {0.7L, 3.0L, 25.0L})
    for (std::int64_t n = 0; n <= 30; ++n)
      for (long double u : {-0.8L, -0.35L, 0.1L, 0.55L, 0.9L}) {
        auto f = [&](long double x) { return poly::gegenbauer<long double>(n, nu, x); };
        const auto [d1, d2] = derivatives(f, u, 1e-4L);
        const long double t1 = (1 - u * u) * d2, t2 = -(2 * nu + 1) * u * d1, t3 = n * (n + 2 * nu) * f(u);
        const long double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1.0L});
        EXPECT_LE(std::abs(t1 + t2 + t3) / scale, 1e-6L) << "n=" << n << " nu=" << static_cast<double>(nu);
      }
}

TEST(Jacobi, OdeResidual) {
  // (1-z^2) y'' + (b - a - (a+b+2) z) y' + n (n+a+b+1) y = 0
  for (auto [a, b] : std::vector<std::pair<long double, long double>>{{0.5L, 1.5L}, {-0.5L, 0.0L}, {20.0L, 3.0L}})
    for (std::int64_t n = 0; n <= 30; ++n)
      for (long double z : {-0.7L, -0.1L, 0.4L, 0.85L}) {
        auto f = [&](long double x) { return poly::jacobi<long double>(n, a, b, x); };
        const auto [d1, d2] = derivatives(f, z, 1e-4L);
        const long double t1 = (1 - z * z) * d2, t2 = (b - a - (a + b + 2) * z) * d1, t3 = n * (n + a + b + 1) * f(z);
        const long double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1.0L});
        EXPECT_LE(std::abs(t1 + t2 + t3) / scale, 1e-6L) << "n=" << n;
      }
}

TEST(LogGamma, SpecialValues) {
  EXPECT_EQ(poly::log_gamma(1.0), 0.0);
  EXPECT_NEAR(poly::log_gamma(0.5), 0.5 * std::log(std::numbers::pi), 1e-15);
  EXPECT_THROW(poly::log_gamma(0.0), DomainError);
  EXPECT_THROW(poly::log_gamma(-2.5), DomainError);
  EXPECT_THROW(poly::log_factorial(-1), DomainError);
}

TEST(LogGamma, MatchesHighPrecision) {
  for (double x = 0.5; x <= 1e6; x *= 1.37) {
    const double ref = static_cast<double>(oracle::lgamma(big(x)));
    EXPECT_NEAR(poly::log_gamma(x), ref, 1e-13 * std::max(1.0, std::abs(ref))) << x;
  }
}

TEST(LogGamma, DuplicationFormula) {
  for (double nu : {0.7, 3.2, 50.0}) {
    const double lhs = poly::log_gamma(2.0 * nu);
    const double rhs = (2.0 * nu - 1.0) * std::numbers::ln2 - 0.5 * std::log(std::numbers::pi) + poly::log_gamma(nu) +
                       poly::log_gamma(nu + 0.5);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(LogGammaRatio, MatchesHighPrecision) {
  for (double x : {0.3, 1.0, 4.5, 9.99, 10.0, 37.2, 1e3, 5e4, 1e6, 1e8})
    for (double delta : {-0.25, 0.5, 1.0, 3.0, 17.5, 100.0}) {
      if (x + delta <= 0.0) continue;
      const double ref = static_cast<double>(oracle::lgamma(big(x) + big(delta)) - oracle::lgamma(big(x)));
      EXPECT_NEAR(poly::log_gamma_ratio(x, delta), ref, 1e-12 * std::max(1.0, std::abs(ref)))
          << "x=" << x << " delta=" << delta;
    }
  EXPECT_EQ(poly::log_gamma_ratio(5.0, 0.0), 0.0);
  EXPECT_THROW(poly::log_gamma_ratio(1.0, -2.0), DomainError);
}

TEST(NormConstants, GegenbauerNormMatchesHighPrecision) {
  for (double nu : {0.6, 1.2, 5.0, 100.0, 5000.0, 1e6, 1e8})
    for (std::int64_t n : {0, 1, 2, 7, 15}) {
      const double ref = static_cast<double>(oracle::log_gegenbauer_norm(n, big(nu)));
      EXPECT_NEAR(poly::log_gegenbauer_norm(n, nu), ref, 1e-12 * std::max(1.0, std::abs(ref)))
          << "n=" << n << " nu=" << nu;
    }
}

TEST(NormConstants, JacobiNormMatchesHighPrecision) {
  for (double a : {-0.5, 0.5, 99.5, 4999.5, 1e8})
    for (double b : {-0.5, 0.0, 1.5, 6.0})
      for (std::int64_t n : {0, 1, 5, 15}) {
        const big ref = oracle::log_jacobi_norm(n, big(a), big(b)) - (big(a) + b + 1) * log(big(2));
        const double r = static_cast<double>(ref);
        EXPECT_NEAR(poly::log_jacobi_norm_scaled(n, a, b), r, 1e-12 * std::max(1.0, std::abs(r)))
            << "n=" << n << " a=" << a << " b=" << b;
      }
}
