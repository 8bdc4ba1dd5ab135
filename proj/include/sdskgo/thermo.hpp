#pragma once

// Canonical-ensemble thermodynamics at fixed orbital number l: the Boltzmann
// sum over n by direct summation, by its high-temperature asymptotic series,
// and by the first-order closed form, with F, U, C, S.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "sdskgo/errors.hpp"
#include "sdskgo/model.hpp"
#include "sdskgo/parallel.hpp"

namespace sdskgo {

/// Coefficients of E_{n,l} = m c^2 sqrt(a1 + a2 n + a3 n^2) at fixed l.
struct ThermoParams {
  double a1 = 1.0;
  double a2 = 0.0;
  double a3 = 0.0;
  std::int64_t l = 0;
  int dim = 1;
  double k_boltzmann = 1.0;
  double theta = 0.0;
};

inline ThermoParams make_thermo_params(const DeformationParams& params, const OscillatorConfig& cfg,
                                       std::int64_t l = 0) {
  if (l < 0) throw DomainError("l must be nonnegative");
  ThermoParams tp;
  const double mc = cfg.m * cfg.c;
  tp.a3 = params.k_squared / (mc * mc);
  const double ll = static_cast<double>(l);
  tp.a1 = 1.0 - tp.a3 * ll * (ll + cfg.dim - 2.0);
  tp.a2 = 2.0 * cfg.omega * cfg.hbar / cfg.rest_energy() + tp.a3 * (cfg.dim - 1.0);
  tp.l = l;
  tp.dim = cfg.dim;
  tp.k_boltzmann = cfg.k_boltzmann;
  tp.theta = params.theta;
  if (!(tp.a1 > 0.0)) throw DomainError("a1 <= 0: the ground level of this l would be complex");
  return tp;
}

namespace detail {

inline void require_temperature(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) throw DomainError("temperature must be positive");
}

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace detail

/// Deformation offset in the high-temperature bracket, delta = 3 (k_B T)^2 + (D-1) hbar m omega c^2 / 2.
/// Equals 3 (k_B T)^2 + (D-1) hbar c^2 / (2 m omega) whenever m omega = 1.
inline double thermo_delta(double temperature, const ThermoParams& tp, const OscillatorConfig& cfg) {
  const double kt = tp.k_boltzmann * temperature;
  return 3.0 * kt * kt + 0.5 * (tp.dim - 1.0) * cfg.hbar * cfg.m * cfg.omega * cfg.c * cfg.c;
}

/// Z = sum_n exp(-(m c^2 / k_B T) sqrt(a1 + a2 n + a3 n^2)), truncated once
/// a rigorous tail bound drops below tol times the partial sum. The tail
/// after index N is bounded by f(N) + int_N^inf f, with f minorized by
/// sqrt(a3) x and sqrt(a2 x).
inline double partition_direct(double temperature, const ThermoParams& tp, const OscillatorConfig& cfg,
                               double tol = 1e-12) {
  detail::require_temperature(temperature);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const double x0 = cfg.rest_energy() / (tp.k_boltzmann * temperature);
  const double lin = x0 * std::sqrt(tp.a3);
  const double root = x0 * std::sqrt(tp.a2);
  if (!(lin > 0.0) && !(root > 0.0)) throw DomainError("partition_direct: spectrum does not grow with n");

  auto term = [&](double n) { return std::exp(-x0 * std::sqrt(tp.a1 + n * (tp.a2 + tp.a3 * n))); };
  auto tail_integral = [&](double n) {
    double bound = std::numeric_limits<double>::infinity();
    if (lin > 0.0) bound = std::exp(-lin * n) / lin;
    if (root > 0.0) {
      const double s = root * std::sqrt(n);
      bound = std::min(bound, 2.0 / (root * root) * (1.0 + s) * std::exp(-s));
    }
    return bound;
  };

  detail::CompensatedSum z;
  constexpr std::int64_t block = 256;
  constexpr std::int64_t max_terms = std::int64_t{1} << 40;
  std::int64_t n = 0;
  for (;;) {
    for (std::int64_t k = 0; k < block; ++k, ++n) z.add(term(static_cast<double>(n)));
    const double nn = static_cast<double>(n);
    if (term(nn) + tail_integral(nn) < tol * z.value()) break;
    if (n > max_terms) throw NumericError("partition_direct: tail bound never dropped below tolerance");
  }
  return z.value();
}

struct HighTPartition {
  double value = 0.0;
  bool in_regime = true;  // false when k_B T < 5 m c^2 or theta delta > 0.5
};

/// Z ~ ((k_B T)^2 / m omega hbar c^2) [1 - theta delta].
inline HighTPartition partition_highT(double temperature, const ThermoParams& tp, const OscillatorConfig& cfg) {
  detail::require_temperature(temperature);
  const double kt = tp.k_boltzmann * temperature;
  const double correction = tp.theta * thermo_delta(temperature, tp, cfg);
  if (!(correction < 1.0))
    throw OutOfRegimeError("theta * delta >= 1: high-temperature partition function is not positive");
  HighTPartition z;
  z.value = kt * kt / (cfg.m * cfg.omega * cfg.hbar * cfg.c * cfg.c) * (1.0 - correction);
  z.in_regime = kt >= 5.0 * cfg.rest_energy() && correction <= 0.5;
  return z;
}

inline double log_partition_highT(double temperature, const ThermoParams& tp, const OscillatorConfig& cfg) {
  return std::log(partition_highT(temperature, tp, cfg).value);
}

struct SeriesPartition {
  double value = 0.0;
  double truncation_estimate = 0.0;
  int terms_used = 0;
  double sigma = 0.0;
};

/// sigma = (k_B T / m c^2)^2 4 a3 / (a2^2 - 4 a1 a3).
inline double series_sigma(double temperature, const ThermoParams& tp, const OscillatorConfig& cfg) {
  const double t = tp.k_boltzmann * temperature / cfg.rest_energy();
  const double disc = tp.a2 * tp.a2 - 4.0 * tp.a1 * tp.a3;
  if (!(disc > 0.0)) throw DomainError("a2^2 - 4 a1 a3 must be positive");
  return t * t * 4.0 * tp.a3 / disc;
}

/// High-temperature asymptotic series
///   Z ~ (2 (k_B T/m c^2)^2 / sqrt(a2^2 - 4 a1 a3)) sum_n (-1)^n Gamma(2n+2) ((2n-1)!!/(2n)!!) sigma^n,
/// summed up to the smallest term or n_terms terms, whichever comes first.
///
/// The estimate is the first omitted term plus the magnitudes of the pieces
/// the high-temperature reduction drops: f(0)/2, the B_2 Euler-Maclaurin
/// correction, and the int_0^1 part of the leading Gamma integral.
inline SeriesPartition partition_em_series(double temperature, const ThermoParams& tp,
                                           const OscillatorConfig& cfg, int n_terms = 64) {
  detail::require_temperature(temperature);
  if (n_terms < 1) throw DomainError("n_terms must be >= 1");
  const double sigma = series_sigma(temperature, tp, cfg);
  if (sigma >= 1.0 / 3.0)
    throw OutOfRegimeError("sigma = " + std::to_string(sigma) + ": the asymptotic series diverges from its first term");

  const double t = tp.k_boltzmann * temperature / cfg.rest_energy();
  const double disc = tp.a2 * tp.a2 - 4.0 * tp.a1 * tp.a3;
  const double prefactor = 2.0 * t * t / std::sqrt(disc);

  SeriesPartition out;
  out.sigma = sigma;
  double term = 1.0;  // n = 0
  double sum = term;
  int used = 1;
  double omitted = 0.0;
  for (;;) {
    const double n = used - 1;
    // t_{n+1} / t_n = -(2n+3)(2n+1) sigma
    const double next = -term * (2.0 * n + 3.0) * (2.0 * n + 1.0) * sigma;
    if (used >= n_terms || next == 0.0 || std::abs(next) >= std::abs(term)) {
      omitted = std::abs(next);
      break;
    }
    sum += next;
    term = next;
    ++used;
  }

  const double chi = std::sqrt(tp.a1) / t;
  const double f0 = std::exp(-chi);
  const double df0 = f0 * tp.a2 / (2.0 * t * std::sqrt(tp.a1));
  const double head = 2.0 * tp.a1 / std::sqrt(disc) * (-std::expm1(-chi) - chi * f0) / (chi * chi);
  out.value = prefactor * sum;
  out.truncation_estimate = prefactor * omitted + 0.5 * f0 + df0 / 12.0 + head;
  out.terms_used = used;
  return out;
}

/// F = -k_B T ln[((k_B T)^2 / m omega hbar c^2)(1 - theta delta)].
inline double free_energy(double temperature, const ThermoParams& tp, const OscillatorConfig& cfg) {
  return -tp.k_boltzmann * temperature * log_partition_highT(temperature, tp, cfg);
}

namespace detail {

struct ClosedFormPieces {
  double kt;
  double numerator;    // 2 - theta (D-1) hbar m omega c^2
  double denominator;  // 4 - 2 theta (3 (k_B T)^2 + delta)
  double delta;
};

inline ClosedFormPieces closed_form_pieces(double temperature, const ThermoParams& tp, const OscillatorConfig& cfg) {
  require_temperature(temperature);
  ClosedFormPieces p;
  p.kt = tp.k_boltzmann * temperature;
  p.delta = thermo_delta(temperature, tp, cfg);
  if (!(tp.theta * p.delta < 1.0)) throw OutOfRegimeError("theta * delta >= 1");
  p.numerator = 2.0 - tp.theta * (tp.dim - 1.0) * cfg.hbar * cfg.m * cfg.omega * cfg.c * cfg.c;
  p.denominator = 4.0 - 2.0 * tp.theta * (3.0 * p.kt * p.kt + p.delta);
  if (!(p.denominator > 0.0)) throw OutOfRegimeError("mean-energy denominator is not positive");
  return p;
}

}  // namespace detail

/// U = 4 k_B T [1 - (2 - theta (D-1) hbar m omega c^2) / (4 - 2 theta (3 (k_B T)^2 + delta))].
inline double mean_energy(double temperature, const ThermoParams& tp, const OscillatorConfig& cfg) {
  const auto p = detail::closed_form_pieces(temperature, tp, cfg);
  return 4.0 * p.kt * (1.0 - p.numerator / p.denominator);
}

/// C = dU/dT of the closed-form U.
inline double specific_heat(double temperature, const ThermoParams& tp, const OscillatorConfig& cfg) {
  const auto p = detail::closed_form_pieces(temperature, tp, cfg);
  const double rise = 4.0 + 2.0 * tp.theta * (9.0 * p.kt * p.kt - p.delta);
  return 4.0 * tp.k_boltzmann * (1.0 - p.numerator * rise / (p.denominator * p.denominator));
}

/// S = -dF/dT = k_B [2 (1 - theta (3 (k_B T)^2 + delta)) / (1 - theta delta) + ln Z].
inline double entropy(double temperature, const ThermoParams& tp, const OscillatorConfig& cfg) {
  const auto p = detail::closed_form_pieces(temperature, tp, cfg);
  const double ratio = 2.0 * (1.0 - tp.theta * (3.0 * p.kt * p.kt + p.delta)) / (1.0 - tp.theta * p.delta);
  return tp.k_boltzmann * (ratio + log_partition_highT(temperature, tp, cfg));
}

struct ThermoValues {
  double z = 0.0;
  double f = 0.0;
  double u = 0.0;
  double c = 0.0;
  double s = 0.0;
};

/// Centered difference with step h; when halving h changes the result by more
/// than rel_tol, the Richardson combination of the two steps is returned.
template <typename F>
double central_derivative(F&& f, double x, double h, int order, double rel_tol) {
  auto estimate = [&](double step) {
    const double fp = f(x + step);
    const double fm = f(x - step);
    if (order == 1) return (fp - fm) / (2.0 * step);
    return (fp - 2.0 * f(x) + fm) / (step * step);
  };
  const double coarse = estimate(h);
  const double fine = estimate(0.5 * h);
  if (std::abs(coarse - fine) <= rel_tol * std::abs(fine)) return coarse;
  return (4.0 * fine - coarse) / 3.0;
}

/// F, U, C, S from a ln Z(T) callable by centered differences with h = 1e-4 T.
template <typename LogZ>
ThermoValues numeric_thermo(LogZ&& log_z, double temperature, double k_boltzmann) {
  const double h = 1e-4 * temperature;
  const double lz = log_z(temperature);
  const double d1 = central_derivative(log_z, temperature, h, 1, 1e-8);
  const double d2 = central_derivative(log_z, temperature, h, 2, 1e-6);
  ThermoValues v;
  v.z = std::exp(lz);
  v.f = -k_boltzmann * temperature * lz;
  v.u = k_boltzmann * temperature * temperature * d1;
  v.c = k_boltzmann * (2.0 * temperature * d1 + temperature * temperature * d2);
  v.s = k_boltzmann * lz + v.u / temperature;
  return v;
}

enum class ThermoMethod { direct, highT, em, numeric_derivative };

inline std::string_view to_string(ThermoMethod m) {
  switch (m) {
    case ThermoMethod::direct: return "direct";
    case ThermoMethod::highT: return "highT";
    case ThermoMethod::em: return "em";
    case ThermoMethod::numeric_derivative: return "numeric-derivative";
  }
  return "?";
}

inline ThermoMethod parse_thermo_method(std::string_view s) {
  if (s == "direct") return ThermoMethod::direct;
  if (s == "highT" || s == "hight") return ThermoMethod::highT;
  if (s == "em") return ThermoMethod::em;
  if (s == "numeric-derivative" || s == "numeric") return ThermoMethod::numeric_derivative;
  throw DomainError("unknown thermo method '" + std::string(s) + "'");
}

struct ThermoColumns {
  ThermoMethod method = ThermoMethod::highT;
  std::vector<double> z, f, u, c, s;
  std::vector<bool> in_regime;
};

struct ThermoCurve {
  std::vector<double> temperatures;  // strictly increasing
  std::vector<ThermoColumns> columns;  // one per requested method, in request order
};

enum class GridScale { linear, log };

inline std::vector<double> temperature_grid(double t_min, double t_max, std::size_t count, GridScale scale) {
  if (count < 2) throw DomainError("temperature grid needs at least two points");
  if (!(t_min > 0.0) || !(t_max > t_min)) throw DomainError("temperature grid needs 0 < t_min < t_max");
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    grid[i] = scale == GridScale::linear ? t_min + f * (t_max - t_min)
                                         : t_min * std::exp(f * std::log(t_max / t_min));
  }
  grid.back() = t_max;
  return grid;
}

inline ThermoValues thermo_point(ThermoMethod method, double temperature, const ThermoParams& tp,
                                 const OscillatorConfig& cfg, bool& in_regime) {
  const double kb = tp.k_boltzmann;
  switch (method) {
    case ThermoMethod::highT: {
      const auto z = partition_highT(temperature, tp, cfg);
      in_regime = z.in_regime;
      return {z.value, free_energy(temperature, tp, cfg), mean_energy(temperature, tp, cfg),
              specific_heat(temperature, tp, cfg), entropy(temperature, tp, cfg)};
    }
    case ThermoMethod::numeric_derivative: {
      in_regime = partition_highT(temperature, tp, cfg).in_regime;
      return numeric_thermo([&](double t) { return log_partition_highT(t, tp, cfg); }, temperature, kb);
    }
    case ThermoMethod::direct: {
      in_regime = true;
      return numeric_thermo([&](double t) { return std::log(partition_direct(t, tp, cfg, 1e-14)); }, temperature,
                            kb);
    }
    case ThermoMethod::em: {
      // Freeze the truncation order at the center so the stencil sees one smooth function.
      const auto center = partition_em_series(temperature, tp, cfg);
      in_regime = center.truncation_estimate <= 0.02 * center.value;
      const int terms = center.terms_used;
      return numeric_thermo(
          [&](double t) { return std::log(partition_em_series(t, tp, cfg, terms).value); }, temperature, kb);
    }
  }
  throw DomainError("unknown thermo method");
}

/// Tabulates Z, F, U, C, S per method. Points where a method is out of its
/// regime are flagged; points where it cannot be evaluated at all hold NaN.
inline ThermoCurve thermo_curve(const std::vector<double>& grid, const ThermoParams& tp, const OscillatorConfig& cfg,
                                const std::vector<ThermoMethod>& methods) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("temperature grid must be strictly increasing");
  for (double t : grid) detail::require_temperature(t);

  ThermoCurve curve;
  curve.temperatures = grid;
  const std::size_t n = grid.size();
  for (auto method : methods) {
    ThermoColumns col;
    col.method = method;
    col.z.assign(n, 0.0);
    col.f.assign(n, 0.0);
    col.u.assign(n, 0.0);
    col.c.assign(n, 0.0);
    col.s.assign(n, 0.0);
    std::vector<char> flags(n, 0);
    parallel_for(n, [&](std::size_t i) {
      bool ok = false;
      ThermoValues v;
      try {
        v = thermo_point(method, grid[i], tp, cfg, ok);
      } catch (const Error&) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        v = {nan, nan, nan, nan, nan};
        ok = false;
      }
      col.z[i] = v.z;
      col.f[i] = v.f;
      col.u[i] = v.u;
      col.c[i] = v.c;
      col.s[i] = v.s;
      flags[i] = ok ? 1 : 0;
    });
    col.in_regime.assign(flags.begin(), flags.end());
    curve.columns.push_back(std::move(col));
  }
  return curve;
}

}  // namespace sdskgo
