#pragma once

// D-dimensional radial sector: spectrum E_{n,l}, Jacobi radial wavefunctions,
// and the quantization-condition oracle.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sdskgo/errors.hpp"
#include "sdskgo/model.hpp"
#include "sdskgo/polynomials.hpp"
#include "sdskgo/quadrature.hpp"
#include "sdskgo/spectrum1d.hpp"

namespace sdskgo {

/// L^2 = l (l + D - 2).
inline double separation_constant(std::int64_t l, int dim) {
  const double ll = static_cast<double>(l);
  return ll * (ll + static_cast<double>(dim) - 2.0);
}

/// Number of independent degree-l harmonics on the (D-1)-sphere.
/// For D = 1 the two parity labels l = 0, 1 each carry one state.
inline std::uint64_t harmonic_multiplicity(std::int64_t l, int dim) {
  if (dim == 1) return (l == 0 || l == 1) ? 1 : 0;
  if (dim == 2) return l == 0 ? 1 : 2;
  // C(l+D-1, D-1) - C(l+D-3, D-1)
  auto binom = [](std::int64_t top, std::int64_t k) -> double {
    if (top < k || top < 0) return 0.0;
    double r = 1.0;
    for (std::int64_t i = 1; i <= k; ++i) r = r * static_cast<double>(top - k + i) / static_cast<double>(i);
    return r;
  };
  const double v = binom(l + dim - 1, dim - 1) - binom(l + dim - 3, dim - 1);
  return static_cast<std::uint64_t>(std::llround(v));
}

namespace detail {

inline void validate_nl(std::int64_t n, std::int64_t l, int dim) {
  if (dim < 1) throw QuantumNumberError("dimension must be >= 1");
  if (n < 0 || l < 0) throw QuantumNumberError("n and l must be nonnegative");
  if (l > n) throw QuantumNumberError("l = " + std::to_string(l) + " exceeds n = " + std::to_string(n));
  if ((n - l) % 2 != 0) throw QuantumNumberError("n - l must be even (n = 2 n_r + l)");
  if (dim == 1 && l > 1) throw QuantumNumberError("in one dimension l is a parity label (0 or 1)");
}

}  // namespace detail

/// E_{n,l} = +-m c^2 {1 + (2 hbar omega / m c^2) n + (k^2 / m^2 c^2)[n^2 + (D-1) n - l(l+D-2)]}^{1/2}.
inline double energy_nd(std::int64_t n, std::int64_t l, int dim, const DeformationParams& params,
                        const OscillatorConfig& cfg, Branch branch = Branch::positive) {
  detail::validate_nl(n, l, dim);
  const double nn = static_cast<double>(n);
  const double rest = cfg.rest_energy();
  const double mc = cfg.m * cfg.c;
  const double bracket = nn * nn + (dim - 1.0) * nn - separation_constant(l, dim);
  const double radicand = 1.0 + 2.0 * cfg.hbar * cfg.omega * nn / rest + params.k_squared * bracket / (mc * mc);
  return branch_sign(branch) * rest * std::sqrt(radicand);
}

/// The radial exponent mu solves the same equation as the 1D nu.
inline double mu_exponent(const DeformationParams& params, const OscillatorConfig& cfg) {
  return nu_exponent(params, cfg);
}

struct JacobiExponents {
  double a = 0.0;  // mu - 1/2
  double b = 0.0;  // l - 1 + D/2
};

inline JacobiExponents jacobi_exponents(double mu, std::int64_t l, int dim) {
  return {mu - 0.5, static_cast<double>(l) - 1.0 + 0.5 * dim};
}

/// Energy from n_r (n_r + a + b + 1) = [eps'/k^2 - (2l + D) mu - l] / 4 with
/// eps' = (E^2 - m^2 c^4)/c^2 + D m omega hbar.
inline double energy_nd_oracle(std::int64_t nr, std::int64_t l, int dim, const DeformationParams& params,
                               const OscillatorConfig& cfg) {
  if (nr < 0 || l < 0) throw QuantumNumberError("n_r and l must be nonnegative");
  if (dim < 1) throw QuantumNumberError("dimension must be >= 1");
  const double mu = mu_exponent(params, cfg);
  const auto [a, b] = jacobi_exponents(mu, l, dim);
  const double r = static_cast<double>(nr);
  const double ll = static_cast<double>(l);
  const double eps = params.k_squared * (4.0 * r * (r + a + b + 1.0) + (2.0 * ll + dim) * mu + ll);
  const double rest = cfg.rest_energy();
  const double shift = dim * cfg.m * cfg.omega * cfg.hbar;
  return std::sqrt(rest * rest + cfg.c * cfg.c * (eps - shift));
}

/// First-order-in-theta split of E_{n,l}.
inline FirstOrderEnergy energy_nd_deviation_first_order(std::int64_t n, std::int64_t l, int dim,
                                                        const DeformationParams& params,
                                                        const OscillatorConfig& cfg) {
  detail::validate_nl(n, l, dim);
  const double nn = static_cast<double>(n);
  const double rest = cfg.rest_energy();
  const double hw = cfg.hbar * cfg.omega;
  const double root = std::sqrt(1.0 + 2.0 * hw * nn / rest);
  const double bracket = nn * nn + (dim - 1.0) * nn - separation_constant(l, dim);
  return {rest * root, hw * hw * rest * bracket * params.theta / (2.0 * root)};
}

/// ln N of the radial normalization, such that
/// int_0^{1/sqrt(alpha2)} D p^{D-1} dp (1 - alpha2 p^2)^{-1/2} phi^2 = 1.
inline double log_norm_radial(std::int64_t nr, std::int64_t l, int dim, double mu, double alpha2) {
  const auto [a, b] = jacobi_exponents(mu, l, dim);
  // N^2 = 2 alpha2^{D/2} / (D h_{n_r} 2^{-a-b-1})
  return 0.5 * (std::numbers::ln2 + 0.5 * dim * std::log(alpha2) - std::log(static_cast<double>(dim)) -
                poly::log_jacobi_norm_scaled(nr, a, b));
}

struct QuantumStateND {
  std::int64_t nr = 0;
  std::int64_t l = 0;
  int dim = 2;
  double mu = 0.0;
  double a = 0.0;
  double b = 0.0;
  std::int64_t n = 0;
  double norm = 0.0;
  double energy = 0.0;
};

inline QuantumStateND make_state_nd(std::int64_t nr, std::int64_t l, int dim, const DeformationParams& params,
                                    const OscillatorConfig& cfg, Branch branch = Branch::positive) {
  detail::require_momentum_representation(params);
  QuantumStateND s;
  s.nr = nr;
  s.l = l;
  s.dim = dim;
  s.n = 2 * nr + l;
  s.energy = energy_nd(s.n, l, dim, params, cfg, branch);
  s.mu = mu_exponent(params, cfg);
  const auto ex = jacobi_exponents(s.mu, l, dim);
  s.a = ex.a;
  s.b = ex.b;
  s.norm = std::exp(log_norm_radial(nr, l, dim, s.mu, params.alpha2));
  return s;
}

/// phi(p) = N (1 - alpha2 p^2)^{mu/2} (alpha2 p^2)^{l/2} P_{n_r}^{(a,b)}(2 alpha2 p^2 - 1).
inline double radial_wavefunction(std::int64_t nr, std::int64_t l, int dim, const DeformationParams& params,
                                  const OscillatorConfig& cfg, double p) {
  if (nr < 0 || l < 0) throw QuantumNumberError("n_r and l must be nonnegative");
  if (dim < 1) throw QuantumNumberError("dimension must be >= 1");
  detail::require_momentum_representation(params);
  const double s = params.alpha2 * p * p;
  if (p < 0.0 || !(s < 1.0)) throw DomainError("radial momentum outside [0, 1/sqrt(alpha2)[");
  const double mu = mu_exponent(params, cfg);
  const auto [a, b] = jacobi_exponents(mu, l, dim);
  const double log_env = log_norm_radial(nr, l, dim, mu, params.alpha2) + 0.5 * mu * std::log1p(-s);
  const double angular = l == 0 ? 1.0 : std::pow(s, 0.5 * static_cast<double>(l));
  return std::exp(log_env) * angular * poly::jacobi(nr, a, b, 2.0 * s - 1.0);
}

/// <phi_{n_r} | phi_{n_r'}> at fixed (l, D) under the radial measure
/// D p^{D-1} dp / sqrt(1 - alpha2 p^2), by Gauss-Jacobi quadrature in z = 2 alpha2 p^2 - 1.
inline double overlap_radial(std::int64_t nr1, std::int64_t nr2, std::int64_t l, int dim,
                             const DeformationParams& params, const OscillatorConfig& cfg) {
  if (nr1 < 0 || nr2 < 0 || l < 0) throw QuantumNumberError("quantum numbers must be nonnegative");
  detail::require_momentum_representation(params);
  const double mu = mu_exponent(params, cfg);
  const auto [a, b] = jacobi_exponents(mu, l, dim);
  // The substitution leaves D N1 N2 / (2 alpha2^{D/2}) 2^{-a-b-1} in front.
  const double log_scale = log_norm_radial(nr1, l, dim, mu, params.alpha2) +
                           log_norm_radial(nr2, l, dim, mu, params.alpha2) + std::log(static_cast<double>(dim)) -
                           std::numbers::ln2 - 0.5 * dim * std::log(params.alpha2);
  const double scale = std::exp(log_scale);
  // 2^{-a-b-1} times the Jacobi mass is B(a+1, b+1).
  const double beta = std::exp(poly::log_beta_shifted(a, b));
  auto integrand = [&](double z) { return poly::jacobi(nr1, a, b, z) * poly::jacobi(nr2, a, b, z); };
  auto evaluate = [&](std::size_t size) {
    return scale * beta * poly::gauss_jacobi_rule(size, a, b).average(integrand);
  };
  std::size_t size = static_cast<std::size_t>(std::max(nr1, nr2)) + 2;
  double previous = evaluate(size);
  for (int round = 0; round < 8; ++round) {
    size *= 2;
    const double current = evaluate(size);
    if (std::abs(current - previous) < 1e-12) return current;
    previous = current;
  }
  throw NumericError("overlap_radial: quadrature did not settle");
}

struct SpectrumRow {
  std::int64_t n = 0;
  std::int64_t l = 0;
  int dim = 1;
  double energy = 0.0;
  std::optional<double> spacing;  // E(next n at the same l) - E(n, l)
  double deviation_first_order = 0.0;
  std::uint64_t multiplicity = 1;  // angular states of this (n, l)
  std::uint64_t states_at_energy = 1;  // all states sharing this energy
};

struct SpectrumTable {
  std::vector<SpectrumRow> rows;  // sorted by (n, l)
};

/// All (n, l) with n <= n_max, n - l even; l-dependence of the energy
/// determines which levels stay degenerate.
inline SpectrumTable degeneracy_table(std::int64_t n_max, int dim, const DeformationParams& params,
                                      const OscillatorConfig& cfg) {
  if (n_max < 0) throw QuantumNumberError("n_max must be nonnegative");
  if (dim < 1) throw QuantumNumberError("dimension must be >= 1");
  SpectrumTable table;
  const std::int64_t step = 2;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    for (std::int64_t l = n % 2; l <= n; l += 2) {
      if (dim == 1 && l > 1) break;
      SpectrumRow row;
      row.n = n;
      row.l = l;
      row.dim = dim;
      row.energy = energy_nd(n, l, dim, params, cfg);
      row.spacing = energy_nd(n + step, l, dim, params, cfg) - row.energy;
      row.deviation_first_order = energy_nd_deviation_first_order(n, l, dim, params, cfg).deviation;
      row.multiplicity = harmonic_multiplicity(l, dim);
      table.rows.push_back(row);
    }
  }
  const double tol = 1e-14 * cfg.rest_energy();
  for (auto& row : table.rows) {
    std::uint64_t total = 0;
    for (const auto& other : table.rows)
      if (std::abs(other.energy - row.energy) <= tol * std::max(1.0, row.energy / cfg.rest_energy()))
        total += other.multiplicity;
    row.states_at_energy = total;
  }
  return table;
}

/// Radial Gram matrix at fixed (l, D) for n_r, n_r' <= nr_max.
inline Eigen::MatrixXd gram_matrix_radial(std::int64_t nr_max, std::int64_t l, int dim,
                                          const DeformationParams& params, const OscillatorConfig& cfg) {
  if (nr_max < 0 || l < 0) throw QuantumNumberError("quantum numbers must be nonnegative");
  detail::require_momentum_representation(params);
  const double mu = mu_exponent(params, cfg);
  const auto [a, b] = jacobi_exponents(mu, l, dim);
  const auto size_n = static_cast<Eigen::Index>(nr_max + 1);
  const double log_front = std::log(static_cast<double>(dim)) - std::numbers::ln2 - 0.5 * dim * std::log(params.alpha2) +
                           poly::log_beta_shifted(a, b);
  std::vector<double> factor(static_cast<std::size_t>(size_n));
  for (Eigen::Index r = 0; r < size_n; ++r)
    factor[static_cast<std::size_t>(r)] = std::exp(0.5 * log_front + log_norm_radial(r, l, dim, mu, params.alpha2));

  auto evaluate = [&](std::size_t size) {
    const auto rule = poly::gauss_jacobi_rule(size, a, b);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(size_n, size_n);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      Eigen::VectorXd v(size_n);
      for (Eigen::Index r = 0; r < size_n; ++r)
        v[r] = factor[static_cast<std::size_t>(r)] * poly::jacobi(r, a, b, rule.nodes[i]);
      g.noalias() += rule.probabilities[i] * v * v.transpose();
    }
    return g;
  };
  std::size_t size = static_cast<std::size_t>(nr_max) + 2;
  Eigen::MatrixXd previous = evaluate(size);
  for (int round = 0; round < 8; ++round) {
    size *= 2;
    Eigen::MatrixXd current = evaluate(size);
    if ((current - previous).cwiseAbs().maxCoeff() < 1e-12) return current;
    previous = std::move(current);
  }
  throw NumericError("gram_matrix_radial: quadrature did not settle");
}

}  // namespace sdskgo
