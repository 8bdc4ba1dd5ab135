#pragma once

// Self-checks run by the command-line verify subcommand.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "sdskgo/errors.hpp"
#include "sdskgo/model.hpp"
#include "sdskgo/quadrature.hpp"
#include "sdskgo/spectrum1d.hpp"
#include "sdskgo/spectrumnd.hpp"
#include "sdskgo/thermo.hpp"

namespace sdskgo {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }
};

inline constexpr std::array<std::string_view, 5> verify_suites{"oracles", "orthonormality", "limits", "thermo", "all"};

namespace detail {

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

class CheckSink {
 public:
  CheckSink(std::string suite, VerifyReport& report) : suite_(std::move(suite)), report_(report) {}

  // measured <= tolerance passes
  void bound(std::string name, double measured, double tolerance, std::string detail = {}) {
    report_.checks.push_back({suite_, std::move(name), measured <= tolerance, measured, tolerance, std::move(detail)});
  }

  void flag(std::string name, bool ok, std::string detail = {}) {
    report_.checks.push_back({suite_, std::move(name), ok, ok ? 1.0 : 0.0, 1.0, std::move(detail)});
  }

  template <typename F>
  void guarded(const std::string& name, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      report_.checks.push_back({suite_, name, false, 0.0, 0.0, std::string("exception: ") + e.what()});
    }
  }

 private:
  std::string suite_;
  VerifyReport& report_;
};

inline std::vector<std::int64_t> sample_levels(std::int64_t n_max) {
  std::vector<std::int64_t> levels;
  for (std::int64_t n = 0; n <= std::min<std::int64_t>(n_max, 200); ++n) levels.push_back(n);
  for (std::int64_t n = 250; n <= n_max; n += 250) levels.push_back(n);
  return levels;
}

inline double gram_deviation(const Eigen::MatrixXd& g, bool diagonal) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      if ((i == j) == diagonal) worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

inline void verify_oracles(const DeformationParams& params, const OscillatorConfig& base, VerifyReport& report) {
  CheckSink sink("oracles", report);
  const auto cfg1 = [&] {
    auto c = base;
    c.dim = 1;
    return c;
  }();
  sink.guarded("energy_1d_two_path_grid", [&] {
    const std::array<double, 5> grid{0.0, 1e-6, 1e-4, 1e-2, 1.0};
    double worst = 0.0;
    for (double a1 : grid)
      for (double a2 : grid) {
        if (a1 == 0.0 && a2 == 0.0) continue;
        const auto p = derive_params(a1, a2, cfg1);
        for (auto n : sample_levels(10000))
          worst = std::max(worst, rel_diff(energy_1d(n, p, cfg1), energy_1d_oracle(n, p, cfg1)));
      }
    sink.bound("energy_1d_two_path_grid", worst, 1e-12);
  });
  if (params.deformed()) {
    sink.guarded("energy_1d_two_path", [&] {
      double worst = 0.0;
      for (auto n : sample_levels(10000))
        worst = std::max(worst, rel_diff(energy_1d(n, params, cfg1), energy_1d_oracle(n, params, cfg1)));
      sink.bound("energy_1d_two_path", worst, 1e-12);
    });
    sink.guarded("energy_nd_two_path", [&] {
      double worst = 0.0;
      for (int dim : {2, 3, 4, 10}) {
        auto c = base;
        c.dim = dim;
        for (std::int64_t l = 0; l <= 10; ++l) {
          const double ll = static_cast<double>(l);
          // keep the ground level of this l real
          if (params.k_squared * ll * (ll + dim - 2.0) >= c.m * c.m * c.c * c.c) continue;
          for (std::int64_t nr = 0; nr <= 50; ++nr)
            worst = std::max(worst, rel_diff(energy_nd(2 * nr + l, l, dim, params, c),
                                             energy_nd_oracle(nr, l, dim, params, c)));
        }
      }
      sink.bound("energy_nd_two_path", worst, 1e-12);
    });
    sink.guarded("nu_perfect_square", [&] {
      const double t = cfg1.m * cfg1.omega * cfg1.hbar / params.k_squared;
      if (2.0 * t >= 1.0)
        sink.bound("nu_perfect_square", rel_diff(nu_exponent(params, cfg1), nu_exponent_radical(params, cfg1)), 1e-8);
      else
        sink.flag("nu_perfect_square", true, "radical branch only");
    });
  }
  sink.guarded("dimensional_reduction", [&] {
    double worst = 0.0;
    for (std::int64_t n = 0; n <= 1000; ++n)
      worst = std::max(worst, rel_diff(energy_nd(n, n % 2, 1, params, cfg1), energy_1d(n, params, cfg1)));
    sink.bound("dimensional_reduction", worst, 1e-15);
  });
}

inline void verify_orthonormality(const DeformationParams& params, const OscillatorConfig& base,
                                  VerifyReport& report) {
  CheckSink sink("orthonormality", report);
  auto cfg1 = base;
  cfg1.dim = 1;
  std::vector<std::pair<double, double>> cases{{1e-4, 1e-4}, {0.005, 0.005}, {0.0, 0.01}};
  const std::pair<double, double> own{params.alpha1, params.alpha2};
  if (params.alpha2 > 0.0 && std::find(cases.begin(), cases.end(), own) == cases.end()) cases.push_back(own);
  for (const auto& [a1, a2] : cases) {
    const std::string tag = "(" + std::to_string(a1) + "," + std::to_string(a2) + ")";
    sink.guarded("gram_1d" + tag, [&] {
      const auto p = derive_params(a1, a2, cfg1);
      const auto g = gram_matrix_1d(15, p, cfg1);
      sink.bound("gram_1d_offdiag" + tag, gram_deviation(g, false), 1e-8);
      sink.bound("gram_1d_diag" + tag, gram_deviation(g, true), 1e-10);
    });
    for (int dim : {2, 3}) {
      sink.guarded("gram_radial" + tag, [&] {
        auto c = base;
        c.dim = dim;
        const auto p = derive_params(a1, a2, c);
        double off = 0.0, diag = 0.0;
        for (std::int64_t l = 0; l <= 2; ++l) {
          const auto g = gram_matrix_radial(15, l, dim, p, c);
          off = std::max(off, gram_deviation(g, false));
          diag = std::max(diag, gram_deviation(g, true));
        }
        const std::string d = "_D" + std::to_string(dim);
        sink.bound("gram_radial_offdiag" + d + tag, off, 1e-8);
        sink.bound("gram_radial_diag" + d + tag, diag, 1e-10);
      });
    }
  }
  sink.guarded("quadrature_moments", [&] {
    const auto rule = poly::gauss_jacobi_rule(20, 0.0, 0.0);
    double worst = 0.0;
    for (int k = 0; k <= 39; ++k) {
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1.0);
      worst = std::max(worst, std::abs(rule.integrate([&](double y) { return std::pow(y, k); }) - exact));
    }
    sink.bound("quadrature_moments", worst, 1e-12);
  });
}

inline void verify_limits(const DeformationParams& params, const OscillatorConfig& base, VerifyReport& report) {
  CheckSink sink("limits", report);
  (void)params;
  auto cfg1 = base;
  cfg1.dim = 1;
  const auto zero = derive_params(0.0, 0.0, cfg1);
  sink.guarded("undeformed_1d", [&] {
    double worst = 0.0;
    for (std::int64_t n = 0; n <= 1000; ++n) {
      const double expected = cfg1.rest_energy() * std::sqrt(1.0 + 2.0 * cfg1.hbar * cfg1.omega * n / cfg1.rest_energy());
      worst = std::max(worst, std::abs(energy_1d(n, zero, cfg1) - expected));
    }
    sink.bound("undeformed_1d", worst, 0.0);
  });
  sink.guarded("undeformed_degeneracy", [&] {
    double worst = 0.0;
    for (int dim : {2, 3, 4, 10}) {
      auto c = base;
      c.dim = dim;
      const auto p0 = derive_params(0.0, 0.0, c);
      for (std::int64_t n = 0; n <= 40; ++n)
        for (std::int64_t l = n % 2; l <= n; l += 2)
          worst = std::max(worst, std::abs(energy_nd(n, l, dim, p0, c) - energy_nd(n, n % 2, dim, p0, c)));
    }
    sink.bound("undeformed_degeneracy", worst, 1e-14 * base.rest_energy());
  });
  sink.guarded("wavefunction_limit", [&] {
    bool decreasing = true;
    std::string detail;
    for (std::int64_t n = 0; n <= 4; ++n) {
      double last = INFINITY;
      for (double a2 : {1e-3, 1e-4, 1e-5}) {
        const auto p = derive_params(0.0, a2, cfg1);
        const double scale = std::sqrt(cfg1.m * cfg1.omega * cfg1.hbar);
        double sup = 0.0;
        for (int i = -60; i <= 60; ++i) {
          const double mom = 3.0 * scale * i / 60.0;
          sup = std::max(sup, std::abs(wavefunction_1d(n, p, cfg1, mom) - wavefunction_1d_undeformed(n, cfg1, mom)));
        }
        if (!(sup < last)) decreasing = false;
        detail += "n=" + std::to_string(n) + ":" + std::to_string(sup) + " ";
        last = sup;
      }
    }
    sink.flag("wavefunction_limit", decreasing, detail);
  });
  sink.guarded("nonrelativistic_limit", [&] {
    const auto p = derive_params(0.005, 0.005, cfg1);
    std::array<double, 3> gap{};
    int k = 0;
    for (double factor : {10.0, 100.0, 1000.0}) {
      auto c = cfg1;
      c.c *= factor;
      const auto pc = derive_params(p.alpha1, p.alpha2, c);
      gap[k++] = std::abs(energy_1d(3, pc, c) - c.rest_energy() - energy_nonrelativistic(3, pc, c));
    }
    // each factor of 10 in c should shrink the gap by about 100
    const double r1 = gap[0] / gap[1], r2 = gap[1] / gap[2];
    sink.bound("nonrelativistic_limit", std::max(std::abs(std::log10(r1) - 2.0), std::abs(std::log10(r2) - 2.0)), 0.1);
  });
  sink.guarded("first_order_scaling", [&] {
    // remainder of the first-order expansion should scale as theta^2
    const std::int64_t n = 10;
    std::array<double, 2> rem{};
    int k = 0;
    for (double a : {1e-5, 0.5e-5}) {
      const auto p = derive_params(a, a, cfg1);
      const auto fo = energy_deviation_first_order(n, p, cfg1);
      rem[k++] = std::abs(energy_1d(n, p, cfg1) - fo.unperturbed - fo.deviation);
    }
    sink.bound("first_order_scaling", std::abs(rem[0] / rem[1] - 4.0), 0.05);
  });
}

inline void verify_thermo(const DeformationParams& params, const OscillatorConfig& base, VerifyReport& report) {
  CheckSink sink("thermo", report);
  (void)params;
  const std::array<double, 3> thetas{0.0, 1e-6, 1e-5};
  for (int dim : {1, 3}) {
    auto c = base;
    c.dim = dim;
    c.k_boltzmann = 1.0;
    const std::string d = "_D" + std::to_string(dim);
    sink.guarded("partition_chain" + d, [&] {
      double worst_high = 0.0;
      bool em_ok = true;
      for (double th : thetas) {
        const double share = 0.5 * th * c.c * c.c;
        const auto p = derive_params(share * c.m * c.m * c.omega * c.omega, share, c);
        const auto tp = make_thermo_params(p, c, 0);
        for (double x = 15.0; x <= 50.0; x += 5.0) {
          const double t = x * c.rest_energy() / c.k_boltzmann;
          const double z = partition_direct(t, tp, c);
          worst_high = std::max(worst_high, std::abs(partition_highT(t, tp, c).value / z - 1.0));
          const auto em = partition_em_series(t, tp, c);
          if (!(std::abs(em.value - z) <= em.truncation_estimate)) em_ok = false;
        }
      }
      sink.bound("direct_vs_highT" + d, worst_high, 0.05);
      sink.flag("em_within_estimate" + d, em_ok);
    });
    sink.guarded("closed_forms" + d, [&] {
      const auto p = derive_params(0.0, 0.0, c);
      const auto tp = make_thermo_params(p, c, 0);
      double worst = 0.0;
      for (double t : {15.0, 20.0, 35.0, 50.0}) {
        const auto num = numeric_thermo([&](double x) { return log_partition_highT(x, tp, c); }, t, c.k_boltzmann);
        worst = std::max({worst, rel_diff(num.u, mean_energy(t, tp, c)), rel_diff(num.c, specific_heat(t, tp, c)),
                          rel_diff(num.s, entropy(t, tp, c))});
      }
      sink.bound("closed_forms_vs_derivatives" + d, worst, 1e-6);
    });
  }
  sink.guarded("sign_structure", [&] {
    auto c = base;
    c.dim = 3;
    const double t = 20.0 * c.rest_energy() / c.k_boltzmann;
    std::vector<ThermoValues> v;
    for (double th : thetas) {
      const double share = 0.5 * th * c.c * c.c;
      const auto p = derive_params(share * c.m * c.m * c.omega * c.omega, share, c);
      const auto tp = make_thermo_params(p, c, 0);
      v.push_back({partition_highT(t, tp, c).value, free_energy(t, tp, c), mean_energy(t, tp, c),
                   specific_heat(t, tp, c), entropy(t, tp, c)});
    }
    bool ok = true;
    for (std::size_t i = 1; i < v.size(); ++i)
      ok = ok && v[i].f > v[i - 1].f && v[i].u < v[i - 1].u && v[i].c < v[i - 1].c && v[i].s < v[i - 1].s;
    sink.flag("sign_structure", ok);
  });
}

}  // namespace detail

/// Runs one named suite ("oracles", "orthonormality", "limits", "thermo") or "all".
inline VerifyReport run_verify(std::string_view suite, const DeformationParams& params, const OscillatorConfig& cfg) {
  if (std::find(verify_suites.begin(), verify_suites.end(), suite) == verify_suites.end())
    throw DomainError("unknown verify suite '" + std::string(suite) + "'");
  VerifyReport report;
  const bool all = suite == "all";
  if (all || suite == "oracles") detail::verify_oracles(params, cfg, report);
  if (all || suite == "orthonormality") detail::verify_orthonormality(params, cfg, report);
  if (all || suite == "limits") detail::verify_limits(params, cfg, report);
  if (all || suite == "thermo") detail::verify_thermo(params, cfg, report);
  return report;
}

}  // namespace sdskgo
