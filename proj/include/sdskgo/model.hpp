#pragma once

// Deformation and oscillator parameters for the Klein-Gordon oscillator in
// Snyder-de Sitter space, plus the scalar constants derived from them.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "sdskgo/errors.hpp"

namespace sdskgo {

/// CODATA 2018 values (exact where the SI defines them).
namespace si {
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double c = 299792458.0;                 // m / s
inline constexpr double electron_mass = 9.1093837015e-31;  // kg
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double boltzmann = 1.380649e-23;        // J / K
}  // namespace si

enum class UnitSystem { natural, si };

inline std::string_view to_string(UnitSystem u) {
  return u == UnitSystem::natural ? "natural" : "si";
}

inline UnitSystem parse_unit_system(std::string_view s) {
  if (s == "natural") return UnitSystem::natural;
  if (s == "si" || s == "SI") return UnitSystem::si;
  throw DomainError("unknown unit system '" + std::string(s) + "'");
}

struct OscillatorConfig {
  double m = 1.0;
  double omega = 1.0;
  double c = 1.0;
  double hbar = 1.0;
  int dim = 1;
  UnitSystem units = UnitSystem::natural;
  double k_boltzmann = 1.0;

  /// hbar = c = m = omega = k_B = 1.
  static OscillatorConfig natural(int dim = 1) {
    OscillatorConfig cfg;
    cfg.dim = dim;
    cfg.validate();
    return cfg;
  }

  static OscillatorConfig si_units(double mass, double omega, int dim = 1) {
    OscillatorConfig cfg{mass, omega, si::c, si::hbar, dim, UnitSystem::si, si::boltzmann};
    cfg.validate();
    return cfg;
  }

  double rest_energy() const { return m * c * c; }

  void validate() const {
    if (!(m > 0.0) || !(omega > 0.0) || !(c > 0.0) || !(hbar > 0.0) || !(k_boltzmann > 0.0))
      throw DomainError("oscillator constants m, omega, c, hbar, k_B must be positive");
    if (dim < 1) throw DomainError("spatial dimension must be >= 1");
  }
};

/// alpha1 (Snyder) and alpha2 (de Sitter) with their derived constants.
///
/// `lambda` and `gamma_abs_squared` only exist for alpha1 > 0; everything
/// downstream is written in terms of k^2 and theta, which are defined for all
/// nonnegative alphas.
struct DeformationParams {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  std::optional<double> lambda;
  double k_squared = 0.0;
  double theta = 0.0;
  std::optional<double> gamma_abs_squared;

  bool deformed() const { return k_squared > 0.0; }

  double lambda_value() const {
    if (!lambda) throw DomainError("lambda is undefined for alpha1 = 0");
    return *lambda;
  }
  double gamma_abs_squared_value() const {
    if (!gamma_abs_squared) throw DomainError("|gamma|^2 is singular at alpha1 = 0");
    return *gamma_abs_squared;
  }
};

inline DeformationParams derive_params(double alpha1, double alpha2, const OscillatorConfig& cfg) {
  if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0))
    throw DomainError("deformation parameters must be nonnegative");
  cfg.validate();
  const double mw2 = cfg.m * cfg.m * cfg.omega * cfg.omega;
  DeformationParams p;
  p.alpha1 = alpha1;
  p.alpha2 = alpha2;
  p.k_squared = cfg.hbar * cfg.hbar * (alpha1 + mw2 * alpha2);
  p.theta = (alpha1 / mw2 + alpha2) / (cfg.c * cfg.c);
  if (alpha1 > 0.0) {
    p.lambda = alpha1 / (mw2 * alpha2 + alpha1);
    p.gamma_abs_squared = 1.0 + mw2 * alpha2 / alpha1;
  }
  return p;
}

struct MinimalUncertainties {
  double delta_x = 0.0;
  double delta_p = 0.0;
};

/// Simplified minimal uncertainties hbar sqrt(alpha2), hbar sqrt(alpha1).
inline MinimalUncertainties min_uncertainties(const DeformationParams& params,
                                              const OscillatorConfig& cfg) {
  return {cfg.hbar * std::sqrt(params.alpha2), cfg.hbar * std::sqrt(params.alpha1)};
}

/// Upper bounds on the deformation from the absence of an observed shift of
/// the n-th cyclotron level of an electron in a Penning trap.
struct DeformationBounds {
  double cyclotron_frequency = 0.0;  // omega_c = e B / m_e [1/s]
  /// Coefficient of c^-2 kg^-2 m^-2 s^2, i.e. theta c^2 = alpha1/(m omega)^2 + alpha2.
  double theta_c2_bound = 0.0;
  double theta_bound = 0.0;     // theta itself [J^-2]
  double delta_x_bound = 0.0;   // alpha1 = 0 branch: hbar sqrt(alpha2) [m]
  double delta_p_bound = 0.0;   // alpha2 = 0 branch: hbar sqrt(alpha1) [kg m / s]
};

/// Requires SI units; uses the electron mass and omega_c = e B / m_e, and
/// the condition that the first-order level shift stays below hbar omega_c.
inline DeformationBounds deformation_bounds(const OscillatorConfig& cfg, double b_field,
                                            std::uint64_t n_level) {
  if (cfg.units != UnitSystem::si)
    throw DomainError("deformation bounds are dimensional and need SI units");
  if (!(b_field > 0.0)) throw DomainError("magnetic field must be positive");
  if (n_level < 1) throw DomainError("level index must be >= 1");

  const double me = si::electron_mass;
  const double n = static_cast<double>(n_level);
  DeformationBounds b;
  b.cyclotron_frequency = si::elementary_charge * b_field / me;
  const double hw = cfg.hbar * b.cyclotron_frequency;
  const double rest = me * cfg.c * cfg.c;
  const double root = std::sqrt(1.0 + 2.0 * hw * n / rest);
  // shift / (hbar w) = hbar w m c^2 n^2 theta / (2 root) < 1
  b.theta_bound = 2.0 * root / (hw * rest * n * n);
  b.theta_c2_bound = b.theta_bound * cfg.c * cfg.c;
  b.delta_x_bound = cfg.hbar * std::sqrt(b.theta_c2_bound);
  b.delta_p_bound = cfg.hbar * me * b.cyclotron_frequency * std::sqrt(b.theta_c2_bound);
  return b;
}

}  // namespace sdskgo
