#pragma once

// Gauss-Jacobi quadrature for the weight (1-y)^a (1+y)^b on [-1, 1].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "sdskgo/errors.hpp"
#include "sdskgo/polynomials.hpp"

namespace sdskgo::poly {

struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing, inside (-1, 1)
  std::vector<double> weights;  // positive; may overflow for exponents beyond ~1000
  std::vector<double> probabilities;  // weights / total mass, always representable
  double log_mass = 0.0;        // ln sum(weights)
  double a = 0.0;
  double b = 0.0;

  std::size_t size() const { return nodes.size(); }

  /// sum_i w_i f(y_i)
  template <typename F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }

  /// sum_i w_i f(y_i) / sum_i w_i
  template <typename F>
  double average(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += probabilities[i] * f(nodes[i]);
    return sum;
  }
};

/// ln B(a+1, b+1).
inline double log_beta_shifted(double a, double b) {
  return log_gamma(b + 1.0) - log_gamma_ratio(a + 1.0, b + 1.0);
}

/// ln of int_{-1}^{1} (1-y)^a (1+y)^b dy = 2^{a+b+1} B(a+1, b+1).
inline double log_jacobi_mass(double a, double b) {
  if (a == b) {
    // 2^{2a+1} G(a+1)^2 / G(2a+2) = sqrt(pi) G(a+1) / G(a+3/2)
    return 0.5 * std::log(std::numbers::pi) - log_gamma_ratio(a + 1.0, 0.5);
  }
  return (a + b + 1.0) * std::numbers::ln2 + log_beta_shifted(a, b);
}

namespace detail {

struct JacobiRecurrence {
  std::vector<double> diag;     // alpha_k, k = 0..n-1
  std::vector<double> offdiag;  // sqrt(beta_k), k = 1..n (offdiag[k-1])
};

// Monic recurrence coefficients of the Jacobi weight; one extra beta so the
// degree-n orthonormal polynomial can be formed.
inline JacobiRecurrence jacobi_recurrence(std::size_t n, double a, double b) {
  JacobiRecurrence r;
  r.diag.resize(n);
  r.offdiag.resize(n);
  const double ab = a + b;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i);
    const double s = 2.0 * k + ab;
    r.diag[i] = (i == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (std::size_t i = 1; i <= n; ++i) {
    const double k = static_cast<double>(i);
    const double s = 2.0 * k + ab;
    double beta;
    if (i == 1)
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
    else
      beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    r.offdiag[i - 1] = std::sqrt(beta);
  }
  return r;
}

struct OrthonormalValues {
  double value;       // p_n(x)
  double derivative;  // p_n'(x)
  double christoffel; // sum_{k<n} p_k(x)^2
};

inline OrthonormalValues orthonormal_eval(const JacobiRecurrence& r, std::size_t n, double p0, double x) {
  double pm1 = 0.0, p = p0;
  double dm1 = 0.0, d = 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sum += p * p;
    const double bk = (k == 0) ? 0.0 : r.offdiag[k - 1];
    const double pn = ((x - r.diag[k]) * p - bk * pm1) / r.offdiag[k];
    const double dn = ((x - r.diag[k]) * d + p - bk * dm1) / r.offdiag[k];
    pm1 = p;
    p = pn;
    dm1 = d;
    d = dn;
  }
  return {p, d, sum};
}

}  // namespace detail

/// N-point rule, exact for polynomials of degree <= 2N-1 against the weight.
///
/// Nodes start from the eigenvalues of the Jacobi matrix and are polished by
/// Newton iteration on the orthonormal recurrence (tolerance 1e-14, at most
/// 100 steps). Weights are the Christoffel numbers 1 / sum_k p_k(y_i)^2 of
/// the unit-mass measure, times the total mass.
inline QuadratureRule gauss_jacobi_rule(std::size_t n, double a, double b) {
  if (n < 1) throw DomainError("gauss_jacobi_rule: need at least one node");
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("gauss_jacobi_rule: exponents must exceed -1");

  const auto rec = detail::jacobi_recurrence(n, a, b);
  // Orthonormal with respect to the unit-mass measure; weights are rescaled at the end.
  const double p0 = 1.0;

  Eigen::VectorXd diag(static_cast<Eigen::Index>(n));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(n > 1 ? n - 1 : 0));
  for (std::size_t i = 0; i < n; ++i) diag[static_cast<Eigen::Index>(i)] = rec.diag[i];
  for (std::size_t i = 0; i + 1 < n; ++i) sub[static_cast<Eigen::Index>(i)] = rec.offdiag[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("gauss_jacobi_rule: tridiagonal eigensolver failed");

  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.log_mass = log_jacobi_mass(a, b);
  rule.nodes.resize(n);
  rule.probabilities.resize(n);
  constexpr double tol = 1e-14;
  constexpr int max_iter = 100;
  for (std::size_t i = 0; i < n; ++i) {
    double x = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
    int iter = 0;
    double step = 0.0;
    for (; iter < max_iter; ++iter) {
      const auto v = detail::orthonormal_eval(rec, n, p0, x);
      step = v.value / v.derivative;
      x -= step;
      if (std::abs(step) <= tol * std::max(1.0, std::abs(x))) break;
    }
    if (iter == max_iter || !std::isfinite(x)) {
      std::ostringstream msg;
      msg << "gauss_jacobi_rule: Newton did not converge for node " << i << " of " << n << " (a=" << a
          << ", b=" << b << ", last step " << step << ")";
      throw NumericError(msg.str());
    }
    rule.nodes[i] = x;
    rule.probabilities[i] = 1.0 / detail::orthonormal_eval(rec, n, p0, x).christoffel;
  }
  // Newton can reorder nodes only if two eigenvalues were nearly equal; keep the invariant explicit.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto l, auto r) { return rule.nodes[l] < rule.nodes[r]; });
  QuadratureRule sorted = rule;
  sorted.weights.resize(n);
  const double mass = std::exp(rule.log_mass);
  for (std::size_t i = 0; i < n; ++i) {
    sorted.nodes[i] = rule.nodes[order[i]];
    sorted.probabilities[i] = rule.probabilities[order[i]];
    sorted.weights[i] = sorted.probabilities[i] * mass;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const bool inside = sorted.nodes[i] > -1.0 && sorted.nodes[i] < 1.0;
    const bool increasing = i == 0 || sorted.nodes[i] > sorted.nodes[i - 1];
    if (!inside || !increasing || !(sorted.probabilities[i] > 0.0))
      throw NumericError("gauss_jacobi_rule: produced an invalid rule (nodes collided or left (-1, 1))");
  }
  return sorted;
}

}  // namespace sdskgo::poly
