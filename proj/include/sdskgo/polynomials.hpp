#pragma once

// Classical orthogonal polynomials by forward three-term recurrence, and the
// log-Gamma helpers used for normalization constants.

#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <string>

#include "sdskgo/errors.hpp"

namespace sdskgo::poly {

/// Gegenbauer C_n^nu(x), nu > -1/2.
template <std::floating_point Real>
Real gegenbauer(std::int64_t n, Real nu, Real x) {
  if (n <= 0) return Real(1);
  Real prev = Real(1);
  Real curr = Real(2) * nu * x;
  for (std::int64_t k = 1; k < n; ++k) {
    const Real kk = static_cast<Real>(k);
    const Real next = (Real(2) * x * (kk + nu) * curr - (kk + Real(2) * nu - Real(1)) * prev) / (kk + Real(1));
    prev = curr;
    curr = next;
  }
  return curr;
}

/// Jacobi P_n^{(a,b)}(z), a, b > -1.
template <std::floating_point Real>
Real jacobi(std::int64_t n, Real a, Real b, Real z) {
  if (n <= 0) return Real(1);
  Real prev = Real(1);
  Real curr = (a + Real(1)) + (a + b + Real(2)) * (z - Real(1)) / Real(2);
  for (std::int64_t k = 2; k <= n; ++k) {
    const Real kk = static_cast<Real>(k);
    const Real s = Real(2) * kk + a + b;
    const Real c1 = Real(2) * kk * (kk + a + b) * (s - Real(2));
    const Real c2 = (s - Real(1)) * (s * (s - Real(2)) * z + a * a - b * b);
    const Real c3 = Real(2) * (kk + a - Real(1)) * (kk + b - Real(1)) * s;
    const Real next = (c2 * curr - c3 * prev) / c1;
    prev = curr;
    curr = next;
  }
  return curr;
}

/// Physicists' Hermite H_n(x).
template <std::floating_point Real>
Real hermite(std::int64_t n, Real x) {
  if (n <= 0) return Real(1);
  Real prev = Real(1);
  Real curr = Real(2) * x;
  for (std::int64_t k = 1; k < n; ++k) {
    const Real next = Real(2) * x * curr - Real(2) * static_cast<Real>(k) * prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

inline double log_factorial(std::int64_t n) {
  if (n < 0) throw DomainError("log_factorial: negative argument");
  return log_gamma(static_cast<double>(n) + 1.0);
}

namespace detail {

// Sum of the Stirling tail B_{2k} / (2k (2k-1) x^{2k-1}) for k = 1..8.
inline double stirling_tail(double x) {
  static constexpr double coeff[] = {
      1.0 / 12.0,          -1.0 / 360.0,        1.0 / 1260.0,    -1.0 / 1680.0,
      1.0 / 1188.0,        -691.0 / 360360.0,   1.0 / 156.0,     -3617.0 / 122400.0,
  };
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double term = inv;
  double sum = 0.0;
  for (double c : coeff) {
    sum += c * term;
    term *= inv2;
  }
  return sum;
}

}  // namespace detail

/// ln Gamma(x + delta) - ln Gamma(x) without forming the two (possibly huge)
/// log-Gamma values separately. Absolute error ~1e-15 for all x >= 10.
inline double log_gamma_ratio(double x, double delta) {
  if (!(x > 0.0) || !(x + delta > 0.0)) throw DomainError("log_gamma_ratio: arguments must be positive");
  if (delta == 0.0) return 0.0;
  if (x < 10.0 || x + delta < 10.0) {
    // Shift x up with the recurrence Gamma(x+1) = x Gamma(x) when delta is an
    // integer, otherwise the values are small enough for direct differences.
    if (std::abs(delta) < 64.0 && delta == std::floor(delta)) {
      double acc = 0.0;
      const auto steps = static_cast<std::int64_t>(delta);
      if (steps > 0)
        for (std::int64_t k = 0; k < steps; ++k) acc += std::log(x + static_cast<double>(k));
      else
        for (std::int64_t k = 1; k <= -steps; ++k) acc -= std::log(x - static_cast<double>(k));
      return acc;
    }
    return log_gamma(x + delta) - log_gamma(x);
  }
  const double y = x + delta;
  // (y - 1/2) ln y - (x - 1/2) ln x - delta, with the ln y = ln x + log1p(delta/x) split.
  const double main = delta * std::log(x) + (y - 0.5) * std::log1p(delta / x) - delta;
  return main + detail::stirling_tail(y) - detail::stirling_tail(x);
}

/// ln of the Gegenbauer norm int_{-1}^{1} (1-q^2)^{nu-1/2} [C_n^nu(q)]^2 dq
///   = pi 2^{1-2nu} Gamma(2nu+n) / (n! (n+nu) Gamma(nu)^2),
/// rearranged with the duplication formula so no term grows with nu.
inline double log_gegenbauer_norm(std::int64_t n, double nu) {
  if (!(nu > 0.0)) throw DomainError("log_gegenbauer_norm: nu must be positive");
  const double nn = static_cast<double>(n);
  return 0.5 * std::log(std::numbers::pi) + log_gamma_ratio(nu, 0.5) + log_gamma_ratio(2.0 * nu, nn) -
         log_factorial(n) - std::log(nn + nu);
}

/// ln(h_n / 2^{a+b+1}) where h_n = int (1-y)^a (1+y)^b [P_n^{(a,b)}(y)]^2 dy
///   = 2^{a+b+1} Gamma(n+a+1) Gamma(n+b+1) / (n! (2n+a+b+1) Gamma(n+a+b+1)).
/// The power of two is left out because it cancels in every normalization
/// that uses this and would otherwise dominate the rounding error.
inline double log_jacobi_norm_scaled(std::int64_t n, double a, double b) {
  // n = 0 is the Beta function; the general form has 0 * Gamma(0) at a + b = -1
  if (n == 0) return log_gamma(b + 1.0) - log_gamma_ratio(a + 1.0, b + 1.0);
  const double nn = static_cast<double>(n);
  return log_gamma(nn + b + 1.0) - log_factorial(n) - std::log(2.0 * nn + a + b + 1.0) -
         log_gamma_ratio(nn + a + 1.0, b);
}

}  // namespace sdskgo::poly
