#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "sdskgo/model.hpp"

using namespace sdskgo;

TEST(DeriveParams, EqualSplitNaturalUnits) {
  const auto cfg = OscillatorConfig::natural();
  const auto p = derive_params(0.005, 0.005, cfg);
  EXPECT_DOUBLE_EQ(p.lambda_value(), 0.5);
  EXPECT_DOUBLE_EQ(p.k_squared, 0.01);
  EXPECT_DOUBLE_EQ(p.theta, 0.01);
  EXPECT_DOUBLE_EQ(p.gamma_abs_squared_value(), 2.0);
}

TEST(DeriveParams, UndeformedHasNoLambda) {
  const auto p = derive_params(0.0, 0.0, OscillatorConfig::natural());
  EXPECT_EQ(p.theta, 0.0);
  EXPECT_EQ(p.k_squared, 0.0);
  EXPECT_FALSE(p.deformed());
  EXPECT_FALSE(p.lambda.has_value());
  EXPECT_THROW(p.lambda_value(), DomainError);
  EXPECT_THROW(p.gamma_abs_squared_value(), DomainError);
}

TEST(DeriveParams, PureSnyder) {
  const auto p = derive_params(0.01, 0.0, OscillatorConfig::natural());
  EXPECT_DOUBLE_EQ(p.lambda_value(), 1.0);
  EXPECT_DOUBLE_EQ(p.k_squared, 0.01);
  EXPECT_DOUBLE_EQ(p.theta, 0.01);
}

TEST(DeriveParams, PureDeSitterKeepsKAndTheta) {
  const auto p = derive_params(0.0, 0.02, OscillatorConfig::natural());
  EXPECT_DOUBLE_EQ(p.k_squared, 0.02);
  EXPECT_DOUBLE_EQ(p.theta, 0.02);
  EXPECT_FALSE(p.gamma_abs_squared.has_value());
}

TEST(DeriveParams, RejectsNegative) {
  const auto cfg = OscillatorConfig::natural();
  EXPECT_THROW(derive_params(-1e-3, 0.0, cfg), DomainError);
  EXPECT_THROW(derive_params(0.0, -1e-3, cfg), DomainError);
  EXPECT_THROW(derive_params(std::nan(""), 0.0, cfg), DomainError);
}

TEST(OscillatorConfigTest, Validation) {
  auto cfg = OscillatorConfig::natural();
  cfg.m = 0.0;
  EXPECT_THROW(cfg.validate(), DomainError);
  EXPECT_THROW(OscillatorConfig::natural(0), DomainError);
  EXPECT_THROW(OscillatorConfig::si_units(-1.0, 1.0), DomainError);
}

TEST(DeriveParams, RandomIdentities) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_alpha(-8.0, 0.0);
  std::uniform_real_distribution<double> scale(0.3, 3.0);
  for (int i = 0; i < 100; ++i) {
    OscillatorConfig cfg = OscillatorConfig::natural();
    cfg.m = scale(rng);
    cfg.omega = scale(rng);
    cfg.c = scale(rng);
    cfg.hbar = scale(rng);
    const double a1 = std::pow(10.0, log_alpha(rng));
    const double a2 = std::pow(10.0, log_alpha(rng));
    const auto p = derive_params(a1, a2, cfg);
    const double mw2 = cfg.m * cfg.m * cfg.omega * cfg.omega;
    // lambda gamma gamma* = 1
    EXPECT_NEAR(p.lambda_value() * p.gamma_abs_squared_value(), 1.0, 1e-14);
    // k^2 via gamma gamma*
    EXPECT_NEAR(cfg.hbar * cfg.hbar * a1 * p.gamma_abs_squared_value() / p.k_squared, 1.0, 1e-14);
    // theta recovered from k^2
    EXPECT_NEAR(p.k_squared / (cfg.hbar * cfg.hbar * mw2 * cfg.c * cfg.c) / p.theta, 1.0, 1e-14);
    EXPECT_GT(p.lambda_value(), 0.0);
    EXPECT_LE(p.lambda_value(), 1.0);
  }
}

TEST(MinUncertainties, Values) {
  const auto cfg = OscillatorConfig::natural();
  const auto u = min_uncertainties(derive_params(0.01, 0.01, cfg), cfg);
  EXPECT_DOUBLE_EQ(u.delta_x, 0.1);
  EXPECT_DOUBLE_EQ(u.delta_p, 0.1);
  const auto z = min_uncertainties(derive_params(0.0, 0.0, cfg), cfg);
  EXPECT_EQ(z.delta_x, 0.0);
  EXPECT_EQ(z.delta_p, 0.0);
}

TEST(MinUncertainties, MonotoneInEachAlpha) {
  const auto cfg = OscillatorConfig::natural();
  double last_x = -1.0, last_p = -1.0;
  for (double a = 0.0; a <= 1.0; a += 0.05) {
    const auto u = min_uncertainties(derive_params(a, a, cfg), cfg);
    EXPECT_GE(u.delta_x, last_x);
    EXPECT_GE(u.delta_p, last_p);
    last_x = u.delta_x;
    last_p = u.delta_p;
  }
}

TEST(DeformationBoundsTest, RequiresSi) {
  EXPECT_THROW(deformation_bounds(OscillatorConfig::natural(), 6.0, 10), DomainError);
  const auto si_cfg = OscillatorConfig::si_units(si::electron_mass, 1.0);
  EXPECT_THROW(deformation_bounds(si_cfg, 6.0, 0), DomainError);
  EXPECT_THROW(deformation_bounds(si_cfg, 0.0, 10), DomainError);
}

TEST(DeformationBoundsTest, InvertsFirstOrderShift) {
  const auto cfg = OscillatorConfig::si_units(si::electron_mass, 1.0);
  const std::uint64_t n = 10'000'000'000ULL;
  const auto b = deformation_bounds(cfg, 6.0, n);
  // at the bound the first-order shift equals one cyclotron quantum
  const double hw = si::hbar * si::elementary_charge * 6.0 / si::electron_mass;
  const double rest = si::electron_mass * si::c * si::c;
  const double nn = 1e10;
  const double shift = hw * hw * rest * nn * nn * b.theta_bound / (2.0 * std::sqrt(1.0 + 2.0 * hw * nn / rest));
  EXPECT_NEAR(shift / hw, 1.0, 1e-12);
  EXPECT_NEAR(b.delta_x_bound, si::hbar * std::sqrt(b.theta_c2_bound), 1e-30);
  // alpha2 = 0 branch: alpha1 = (m omega)^2 theta c^2
  const double alpha1 = std::pow(si::electron_mass * b.cyclotron_frequency, 2) * b.theta_c2_bound;
  EXPECT_NEAR(b.delta_p_bound / (si::hbar * std::sqrt(alpha1)), 1.0, 1e-12);
}

TEST(UnitSystemTest, Parse) {
  EXPECT_EQ(parse_unit_system("natural"), UnitSystem::natural);
  EXPECT_EQ(parse_unit_system("si"), UnitSystem::si);
  EXPECT_THROW(parse_unit_system("cgs"), DomainError);
  EXPECT_EQ(to_string(UnitSystem::si), "si");
}
