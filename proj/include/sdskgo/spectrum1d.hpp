#pragma once

// One-dimensional Klein-Gordon oscillator with Snyder-de Sitter deformation:
// Gegenbauer exponent, closed-form spectrum and its limits, and normalized
// momentum-space wavefunctions.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sdskgo/errors.hpp"
#include "sdskgo/model.hpp"
#include "sdskgo/polynomials.hpp"
#include "sdskgo/quadrature.hpp"

namespace sdskgo {

enum class Branch { positive, negative };

inline double branch_sign(Branch b) { return b == Branch::positive ? 1.0 : -1.0; }

namespace detail {

inline void require_nonnegative(std::int64_t n, const char* what) {
  if (n < 0) throw QuantumNumberError(std::string(what) + " must be nonnegative");
}

inline void require_deformed(const DeformationParams& params) {
  if (!params.deformed()) throw UndeformedLimitError("k^2 = 0: the exponent diverges in the undeformed limit");
}

inline void require_momentum_representation(const DeformationParams& params) {
  if (!(params.alpha2 > 0.0))
    throw UnsupportedRepresentationError(
        "alpha2 = 0 has no bounded momentum representation; use the undeformed wavefunction");
}

}  // namespace detail

/// Positive root of nu(nu-1) = eta/k^2 in the radical form.
inline double nu_exponent_radical(const DeformationParams& params, const OscillatorConfig& cfg) {
  detail::require_deformed(params);
  const double mw = cfg.m * cfg.omega;
  const double eta = mw * mw / (mw * mw * params.alpha2 + params.alpha1) - mw * cfg.hbar;
  return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * eta / params.k_squared));
}

/// Gegenbauer exponent nu. The discriminant is the perfect square
/// (1 - 2 m omega hbar / k^2)^2, so nu = m omega hbar / k^2 whenever
/// 2 m omega hbar >= k^2; the radical is only used past that point.
inline double nu_exponent(const DeformationParams& params, const OscillatorConfig& cfg) {
  detail::require_deformed(params);
  const double t = cfg.m * cfg.omega * cfg.hbar / params.k_squared;
  if (2.0 * t >= 1.0) return t;
  return nu_exponent_radical(params, cfg);
}

/// Squared energy in units of (m c^2)^2 for a quadratic-in-n spectrum.
inline double energy_1d_radicand(std::int64_t n, const DeformationParams& params, const OscillatorConfig& cfg) {
  const double nn = static_cast<double>(n);
  const double rest = cfg.rest_energy();
  const double mc = cfg.m * cfg.c;
  return 1.0 + 2.0 * cfg.omega * cfg.hbar * nn / rest + params.k_squared * nn * nn / (mc * mc);
}

inline double energy_1d(std::int64_t n, const DeformationParams& params, const OscillatorConfig& cfg,
                        Branch branch = Branch::positive) {
  detail::require_nonnegative(n, "n");
  return branch_sign(branch) * cfg.rest_energy() * std::sqrt(energy_1d_radicand(n, params, cfg));
}

/// Energy from the quantization condition eps/k^2 - nu = n(n + 2nu),
/// eps = m hbar omega + (E^2 - m^2 c^4)/c^2, independent of the closed form.
inline double energy_1d_oracle(std::int64_t n, const DeformationParams& params, const OscillatorConfig& cfg) {
  detail::require_nonnegative(n, "n");
  const double nu = nu_exponent(params, cfg);
  const double nn = static_cast<double>(n);
  const double eps = params.k_squared * (nn * (nn + 2.0 * nu) + nu);
  const double mhw = cfg.m * cfg.hbar * cfg.omega;
  const double rest = cfg.rest_energy();
  return std::sqrt(rest * rest + cfg.c * cfg.c * (eps - mhw));
}

/// E_{n+1} - E_n on the positive branch, formed from the difference of squares.
inline double spacing_1d(std::int64_t n, const DeformationParams& params, const OscillatorConfig& cfg) {
  detail::require_nonnegative(n, "n");
  const double nn = static_cast<double>(n);
  const double mc = cfg.m * cfg.c;
  const double d2 = 2.0 * cfg.omega * cfg.hbar / cfg.rest_energy() + params.k_squared * (2.0 * nn + 1.0) / (mc * mc);
  const double s = std::sqrt(energy_1d_radicand(n + 1, params, cfg)) + std::sqrt(energy_1d_radicand(n, params, cfg));
  return cfg.rest_energy() * d2 / s;
}

/// lim |E_{n+1} - E_n| = hbar c sqrt(m^2 omega^2 alpha2 + alpha1).
inline double spacing_asymptote(const DeformationParams& params, const OscillatorConfig& cfg) {
  return cfg.c * std::sqrt(params.k_squared);
}

struct FirstOrderEnergy {
  double unperturbed = 0.0;
  double deviation = 0.0;
};

/// E_n to first order in theta: m c^2 sqrt(1 + 2 hbar omega n / m c^2) plus
/// hbar^2 omega^2 m c^2 n^2 theta / (2 sqrt(...)).
inline FirstOrderEnergy energy_deviation_first_order(std::int64_t n, const DeformationParams& params,
                                                     const OscillatorConfig& cfg) {
  detail::require_nonnegative(n, "n");
  const double nn = static_cast<double>(n);
  const double rest = cfg.rest_energy();
  const double hw = cfg.hbar * cfg.omega;
  const double root = std::sqrt(1.0 + 2.0 * hw * nn / rest);
  return {rest * root, hw * hw * rest * nn * nn * params.theta / (2.0 * root)};
}

/// Level shift in units of hbar omega.
inline double deviation_in_quanta(std::int64_t n, const DeformationParams& params, const OscillatorConfig& cfg) {
  return energy_deviation_first_order(n, params, cfg).deviation / (cfg.hbar * cfg.omega);
}

/// n hbar omega (1 + n (hbar / 2 m omega)(m^2 omega^2 alpha2 + alpha1)); no zero-point term.
inline double energy_nonrelativistic(std::int64_t n, const DeformationParams& params, const OscillatorConfig& cfg) {
  detail::require_nonnegative(n, "n");
  const double nn = static_cast<double>(n);
  const double mw = cfg.m * cfg.omega;
  const double hw = cfg.hbar * cfg.omega;
  return nn * hw * (1.0 + nn * (cfg.hbar / (2.0 * mw)) * (mw * mw * params.alpha2 + params.alpha1));
}

/// ln Lambda with Lambda = (2^nu alpha2^{1/4} / sqrt(2 pi)) sqrt(n! (n+nu) Gamma(nu)^2 / Gamma(2nu+n)).
/// Uses Lambda^2 = sqrt(alpha2) / I_n(nu) with I_n the Gegenbauer norm, which
/// is the same quantity without the nu-sized exponents.
inline double log_norm_lambda(std::int64_t n, double nu, double alpha2) {
  return 0.25 * std::log(alpha2) - 0.5 * poly::log_gegenbauer_norm(n, nu);
}

struct QuantumState1D {
  std::int64_t n = 0;
  double nu = 0.0;
  double norm_lambda = 0.0;
  double energy = 0.0;
  Branch branch = Branch::positive;
};

inline QuantumState1D make_state_1d(std::int64_t n, const DeformationParams& params, const OscillatorConfig& cfg,
                                    Branch branch = Branch::positive) {
  detail::require_nonnegative(n, "n");
  detail::require_momentum_representation(params);
  QuantumState1D s;
  s.n = n;
  s.nu = nu_exponent(params, cfg);
  s.norm_lambda = std::exp(log_norm_lambda(n, s.nu, params.alpha2));
  s.energy = energy_1d(n, params, cfg, branch);
  s.branch = branch;
  return s;
}

/// psi_n(p) = Lambda (1 - alpha2 p^2)^{nu/2} C_n^nu(sqrt(alpha2) p), |p| < 1/sqrt(alpha2).
inline double wavefunction_1d(std::int64_t n, const DeformationParams& params, const OscillatorConfig& cfg,
                              double p) {
  detail::require_nonnegative(n, "n");
  detail::require_momentum_representation(params);
  const double u = std::sqrt(params.alpha2) * p;
  if (!(std::abs(u) < 1.0)) throw DomainError("momentum outside ]-1/sqrt(alpha2), 1/sqrt(alpha2)[");
  const double nu = nu_exponent(params, cfg);
  const double envelope = std::exp(0.5 * nu * std::log1p(-u * u) + log_norm_lambda(n, nu, params.alpha2));
  return envelope * poly::gegenbauer(n, nu, u);
}

enum class HermiteConvention {
  normalized,  // 1 / sqrt(2^n n!), unit norm
  as_printed,  // 1 / (sqrt(2^n) n!), equal to the above for n <= 1
};

/// Undeformed momentum-space oscillator eigenfunction
/// c_n (1/(pi m omega hbar))^{1/4} exp(-p^2 / 2 m omega hbar) H_n(p / sqrt(m omega hbar)).
inline double wavefunction_1d_undeformed(std::int64_t n, const OscillatorConfig& cfg, double p,
                                         HermiteConvention convention = HermiteConvention::normalized) {
  detail::require_nonnegative(n, "n");
  const double scale = cfg.m * cfg.omega * cfg.hbar;
  const double x = p / std::sqrt(scale);
  const double log_fact = poly::log_factorial(n);
  const double log_prefactor = -0.5 * static_cast<double>(n) * std::numbers::ln2 -
                               (convention == HermiteConvention::normalized ? 0.5 * log_fact : log_fact) -
                               0.25 * std::log(std::numbers::pi * scale);
  return std::exp(log_prefactor - 0.5 * x * x) * poly::hermite(n, x);
}

/// <psi_n | psi_m> under the deformed measure dp / sqrt(1 - alpha2 p^2),
/// evaluated by Gauss-Jacobi quadrature in u = sqrt(alpha2) p with exponents
/// (nu - 1/2, nu - 1/2). The rule size doubles until the result changes by
/// less than 1e-12.
inline double overlap_1d(std::int64_t n, std::int64_t m, const DeformationParams& params,
                         const OscillatorConfig& cfg) {
  detail::require_nonnegative(n, "n");
  detail::require_nonnegative(m, "m");
  detail::require_momentum_representation(params);
  const double nu = nu_exponent(params, cfg);
  const double scale = std::exp(log_norm_lambda(n, nu, params.alpha2) + log_norm_lambda(m, nu, params.alpha2) -
                                0.5 * std::log(params.alpha2) + poly::log_jacobi_mass(nu - 0.5, nu - 0.5));
  auto integrand = [&](double u) { return poly::gegenbauer(n, nu, u) * poly::gegenbauer(m, nu, u); };

  std::size_t size = static_cast<std::size_t>(std::max(n, m)) + 2;
  double previous = scale * poly::gauss_jacobi_rule(size, nu - 0.5, nu - 0.5).average(integrand);
  for (int round = 0; round < 8; ++round) {
    size *= 2;
    const double current = scale * poly::gauss_jacobi_rule(size, nu - 0.5, nu - 0.5).average(integrand);
    if (std::abs(current - previous) < 1e-12) return current;
    previous = current;
  }
  throw NumericError("overlap_1d: quadrature did not settle");
}

/// Gram matrix G_nm = <psi_n | psi_m> for n, m <= n_max from one shared rule,
/// enlarged until no entry moves by more than 1e-12.
inline Eigen::MatrixXd gram_matrix_1d(std::int64_t n_max, const DeformationParams& params,
                                      const OscillatorConfig& cfg) {
  detail::require_nonnegative(n_max, "n_max");
  detail::require_momentum_representation(params);
  const double nu = nu_exponent(params, cfg);
  const auto dim = static_cast<Eigen::Index>(n_max + 1);
  std::vector<double> log_norm(static_cast<std::size_t>(dim));
  for (Eigen::Index n = 0; n < dim; ++n) log_norm[static_cast<std::size_t>(n)] = log_norm_lambda(n, nu, params.alpha2);
  const double log_front = poly::log_jacobi_mass(nu - 0.5, nu - 0.5) - 0.5 * std::log(params.alpha2);

  auto evaluate = [&](std::size_t size) {
    const auto rule = poly::gauss_jacobi_rule(size, nu - 0.5, nu - 0.5);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      Eigen::VectorXd v(dim);
      for (Eigen::Index n = 0; n < dim; ++n)
        v[n] = std::exp(0.5 * log_front + log_norm[static_cast<std::size_t>(n)]) * poly::gegenbauer(n, nu, rule.nodes[i]);
      g.noalias() += rule.probabilities[i] * v * v.transpose();
    }
    return g;
  };
  std::size_t size = static_cast<std::size_t>(n_max) + 2;
  Eigen::MatrixXd previous = evaluate(size);
  for (int round = 0; round < 8; ++round) {
    size *= 2;
    Eigen::MatrixXd current = evaluate(size);
    if ((current - previous).cwiseAbs().maxCoeff() < 1e-12) return current;
    previous = std::move(current);
  }
  throw NumericError("gram_matrix_1d: quadrature did not settle");
}

}  // namespace sdskgo
