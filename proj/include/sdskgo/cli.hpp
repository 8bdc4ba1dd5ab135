#pragma once

// Command-line front end: spectrum, wavefunction, thermo, bounds and verify
// subcommands writing CSV or JSON tables.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "sdskgo/errors.hpp"
#include "sdskgo/model.hpp"
#include "sdskgo/spectrum1d.hpp"
#include "sdskgo/spectrumnd.hpp"
#include "sdskgo/thermo.hpp"
#include "sdskgo/verify.hpp"

namespace sdskgo::cli {

inline constexpr const char* version_string = "sds-kgo 0.1.0";

enum ExitCode : int { ok = 0, usage = 2, io = 3, out_of_regime = 4 };

struct IoError : Error {
  using Error::Error;
};

struct RunConfig {
  std::string units = "natural";
  double alpha1 = 0.005;
  double alpha2 = 0.005;
  std::optional<double> m;      // natural: 1, si: electron mass
  std::optional<double> omega;  // natural: 1, si: 1 s^-1
  int dim = 1;
  std::int64_t l = 0;
  std::int64_t n = 0;
  std::int64_t n_min = 0;
  std::int64_t n_max = 10;
  double t_min = 15.0;
  double t_max = 50.0;
  int t_count = 36;
  std::string t_scale = "linear";
  int p_count = 201;
  std::string format = "csv";
  std::string out = "-";
  std::vector<std::string> methods{"highT"};
  std::vector<std::pair<double, double>> deformations;  // empty: (alpha1, alpha2) alone
  int figure = 0;
  bool undeformed = false;
  double b_field = 6.0;
  double n_level = 1e10;
  std::string suite = "all";

  bool operator==(const RunConfig&) const = default;
};

inline nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["units"] = c.units;
  j["alpha1"] = c.alpha1;
  j["alpha2"] = c.alpha2;
  j["m"] = c.m ? nlohmann::json(*c.m) : nlohmann::json(nullptr);
  j["omega"] = c.omega ? nlohmann::json(*c.omega) : nlohmann::json(nullptr);
  j["dim"] = c.dim;
  j["l"] = c.l;
  j["n"] = c.n;
  j["n_min"] = c.n_min;
  j["n_max"] = c.n_max;
  j["t_min"] = c.t_min;
  j["t_max"] = c.t_max;
  j["t_count"] = c.t_count;
  j["t_scale"] = c.t_scale;
  j["p_count"] = c.p_count;
  j["format"] = c.format;
  j["out"] = c.out;
  j["methods"] = c.methods;
  auto defs = nlohmann::json::array();
  for (const auto& [a1, a2] : c.deformations) defs.push_back({a1, a2});
  j["deformations"] = defs;
  j["figure"] = c.figure;
  j["undeformed"] = c.undeformed;
  j["b_field"] = c.b_field;
  j["n_level"] = c.n_level;
  j["suite"] = c.suite;
  return j;
}

/// Missing keys keep their defaults; unknown keys are rejected.
inline RunConfig from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("config must be a JSON object");
  RunConfig c;
  const auto known = to_json(c);
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) throw DomainError("unknown config key '" + key + "'");
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    get("units", c.units);
    get("alpha1", c.alpha1);
    get("alpha2", c.alpha2);
    if (j.contains("m") && !j.at("m").is_null()) c.m = j.at("m").get<double>();
    if (j.contains("omega") && !j.at("omega").is_null()) c.omega = j.at("omega").get<double>();
    get("dim", c.dim);
    get("l", c.l);
    get("n", c.n);
    get("n_min", c.n_min);
    get("n_max", c.n_max);
    get("t_min", c.t_min);
    get("t_max", c.t_max);
    get("t_count", c.t_count);
    get("t_scale", c.t_scale);
    get("p_count", c.p_count);
    get("format", c.format);
    get("out", c.out);
    get("methods", c.methods);
    if (j.contains("deformations")) {
      c.deformations.clear();
      for (const auto& d : j.at("deformations")) {
        if (!d.is_array() || d.size() != 2) throw DomainError("deformations entries must be [alpha1, alpha2]");
        c.deformations.emplace_back(d[0].get<double>(), d[1].get<double>());
      }
    }
    get("figure", c.figure);
    get("undeformed", c.undeformed);
    get("b_field", c.b_field);
    get("n_level", c.n_level);
    get("suite", c.suite);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("config: ") + e.what());
  }
  return c;
}

inline OscillatorConfig make_oscillator(const RunConfig& rc) {
  const auto units = parse_unit_system(rc.units);
  OscillatorConfig cfg;
  if (units == UnitSystem::si)
    cfg = OscillatorConfig::si_units(rc.m.value_or(si::electron_mass), rc.omega.value_or(1.0), rc.dim);
  else {
    cfg = OscillatorConfig::natural(rc.dim);
    if (rc.m) cfg.m = *rc.m;
    if (rc.omega) cfg.omega = *rc.omega;
  }
  cfg.validate();
  return cfg;
}

inline std::vector<std::pair<double, double>> deformation_list(const RunConfig& rc) {
  if (rc.deformations.empty()) return {{rc.alpha1, rc.alpha2}};
  return rc.deformations;
}

/// A flat numeric table with '#'-prefixed metadata.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

inline void write_csv(const Table& t, std::ostream& os) {
  for (const auto& [k, v] : t.meta) os << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
}

inline nlohmann::json table_json(const Table& t) {
  nlohmann::json j;
  auto meta = nlohmann::json::object();
  for (const auto& [k, v] : t.meta) meta[k] = v;
  j["meta"] = meta;
  j["columns"] = t.columns;
  auto rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    auto r = nlohmann::json::array();
    for (double v : row) r.push_back(std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr));
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j;
}

inline void write_table(const Table& t, const std::string& format, std::ostream& os) {
  if (format == "json")
    os << table_json(t).dump(2) << '\n';
  else
    write_csv(t, os);
}

// Writes to the named file, or to `fallback` when path is "-".
inline void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(fallback);
    return;
  }
  std::ostringstream buffer;
  body(buffer);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << buffer.str();
  if (!file.flush()) throw IoError("write to '" + path + "' failed");
}

inline std::vector<std::pair<std::string, std::string>> base_meta(const RunConfig& rc, const std::string& command) {
  return {{"version", version_string},
          {"command", command},
          {"units", rc.units},
          {"config", to_json(rc).dump()}};
}

inline int cmd_spectrum(const RunConfig& rc, std::ostream& out) {
  if (rc.n_min < 0 || rc.n_max < rc.n_min) throw QuantumNumberError("empty or negative n range");
  const auto cfg = make_oscillator(rc);
  Table t;
  t.meta = base_meta(rc, "spectrum");
  if (rc.figure == 1) {
    auto defs = deformation_list(rc);
    if (rc.deformations.empty()) defs = {{0.0, 0.0}, {0.0005, 0.0005}, {0.005, 0.005}};
    t.columns.push_back("n");
    for (const auto& [a1, a2] : defs) t.columns.push_back(fmt::format("spacing[alpha1={:g},alpha2={:g}]", a1, a2));
    std::vector<DeformationParams> params;
    for (const auto& [a1, a2] : defs) {
      params.push_back(derive_params(a1, a2, cfg));
      t.meta.emplace_back(fmt::format("asymptote[alpha1={:g},alpha2={:g}]", a1, a2),
                          format_number(spacing_asymptote(params.back(), cfg)));
    }
    for (std::int64_t n = rc.n_min; n <= rc.n_max; ++n) {
      std::vector<double> row{static_cast<double>(n)};
      for (const auto& p : params) row.push_back(spacing_1d(n, p, cfg));
      t.rows.push_back(std::move(row));
    }
  } else {
    const auto p = derive_params(rc.alpha1, rc.alpha2, cfg);
    t.meta.emplace_back("theta", format_number(p.theta));
    t.meta.emplace_back("spacing_asymptote", format_number(spacing_asymptote(p, cfg)));
    if (cfg.dim == 1) {
      t.columns = {"n", "energy", "spacing", "deviation_first_order"};
      for (std::int64_t n = rc.n_min; n <= rc.n_max; ++n)
        t.rows.push_back({static_cast<double>(n), energy_1d(n, p, cfg), spacing_1d(n, p, cfg),
                          energy_deviation_first_order(n, p, cfg).deviation});
    } else {
      t.columns = {"n", "l", "dim", "energy", "spacing", "deviation_first_order", "multiplicity", "states_at_energy"};
      const auto table = degeneracy_table(rc.n_max, cfg.dim, p, cfg);
      for (const auto& r : table.rows) {
        if (r.n < rc.n_min) continue;
        t.rows.push_back({static_cast<double>(r.n), static_cast<double>(r.l), static_cast<double>(r.dim), r.energy,
                          r.spacing.value_or(std::numeric_limits<double>::quiet_NaN()), r.deviation_first_order,
                          static_cast<double>(r.multiplicity), static_cast<double>(r.states_at_energy)});
      }
    }
  }
  emit(rc.out, out, [&](std::ostream& os) { write_table(t, rc.format, os); });
  return ExitCode::ok;
}

inline int cmd_wavefunction(const RunConfig& rc, std::ostream& out) {
  if (rc.p_count < 2) throw DomainError("p_count must be >= 2");
  const auto cfg = make_oscillator(rc);
  Table t;
  t.meta = base_meta(rc, "wavefunction");
  const auto count = static_cast<std::size_t>(rc.p_count);
  if (rc.undeformed) {
    if (cfg.dim != 1) throw DomainError("--undeformed is only available in one dimension");
    const double pmax = 5.0 * std::sqrt(cfg.m * cfg.omega * cfg.hbar);
    t.columns = {"p", "psi"};
    for (std::size_t i = 0; i < count; ++i) {
      const double p = -pmax + 2.0 * pmax * static_cast<double>(i) / static_cast<double>(count - 1);
      t.rows.push_back({p, wavefunction_1d_undeformed(rc.n, cfg, p)});
    }
  } else {
    if (!(rc.alpha2 > 0.0))
      throw UnsupportedRepresentationError(
          "alpha2 = 0 has no bounded momentum representation: use --undeformed for the undeformed profile");
    const auto params = derive_params(rc.alpha1, rc.alpha2, cfg);
    const double edge = 1.0 / std::sqrt(params.alpha2);
    t.columns = {"p", "psi"};
    if (cfg.dim == 1) {
      t.meta.emplace_back("nu", format_number(nu_exponent(params, cfg)));
      t.meta.emplace_back("norm", format_number(overlap_1d(rc.n, rc.n, params, cfg)));
      for (std::size_t i = 0; i < count; ++i) {
        const double p = -edge + 2.0 * edge * static_cast<double>(i + 1) / static_cast<double>(count + 1);
        t.rows.push_back({p, wavefunction_1d(rc.n, params, cfg, p)});
      }
    } else {
      if (rc.n < rc.l || (rc.n - rc.l) % 2 != 0) throw QuantumNumberError("need n >= l with n - l even");
      const std::int64_t nr = (rc.n - rc.l) / 2;
      t.meta.emplace_back("mu", format_number(mu_exponent(params, cfg)));
      t.meta.emplace_back("n_r", std::to_string(nr));
      t.meta.emplace_back("norm", format_number(overlap_radial(nr, nr, rc.l, cfg.dim, params, cfg)));
      for (std::size_t i = 0; i < count; ++i) {
        const double p = edge * static_cast<double>(i) / static_cast<double>(count);
        t.rows.push_back({p, radial_wavefunction(nr, rc.l, cfg.dim, params, cfg, p)});
      }
    }
  }
  emit(rc.out, out, [&](std::ostream& os) { write_table(t, rc.format, os); });
  return ExitCode::ok;
}

inline std::vector<ThermoMethod> parse_methods(const std::vector<std::string>& names) {
  std::vector<ThermoMethod> methods;
  for (const auto& name : names) {
    if (name == "all") {
      for (auto m : {ThermoMethod::direct, ThermoMethod::highT, ThermoMethod::em, ThermoMethod::numeric_derivative})
        if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
      continue;
    }
    const auto m = parse_thermo_method(name);
    if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
  }
  return methods;
}

// Presets for the temperature-dependence figures: 3D, natural units, theta in {0, 1e-6, 1e-5}.
inline RunConfig apply_thermo_figure(RunConfig rc) {
  if (rc.figure < 2 || rc.figure > 5) return rc;
  rc.units = "natural";
  rc.dim = 3;
  if (rc.deformations.empty())
    for (double theta : {0.0, 1e-6, 1e-5}) rc.deformations.emplace_back(0.5 * theta, 0.5 * theta);
  return rc;
}

inline int cmd_thermo(const RunConfig& input, std::ostream& out) {
  const RunConfig rc = apply_thermo_figure(input);
  if (rc.t_count < 2) throw DomainError("t_count must be >= 2");
  if (rc.t_scale != "linear" && rc.t_scale != "log") throw DomainError("t_scale must be linear or log");
  const auto cfg = make_oscillator(rc);
  const auto grid = temperature_grid(rc.t_min, rc.t_max, static_cast<std::size_t>(rc.t_count),
                                     rc.t_scale == "log" ? GridScale::log : GridScale::linear);
  const auto methods = parse_methods(rc.methods);

  struct Block {
    double theta;
    ThermoCurve curve;
  };
  std::vector<Block> blocks;
  bool any_in_regime = false;
  for (const auto& [a1, a2] : deformation_list(rc)) {
    const auto params = derive_params(a1, a2, cfg);
    const auto tp = make_thermo_params(params, cfg, rc.l);
    blocks.push_back({params.theta, thermo_curve(grid, tp, cfg, methods)});
    for (const auto& col : blocks.back().curve.columns)
      for (bool f : col.in_regime) any_in_regime = any_in_regime || f;
  }
  if (!methods.empty() && !any_in_regime) throw DomainError("every temperature point is outside the validity regime");

  static const std::vector<std::pair<std::string, std::vector<double> ThermoColumns::*>> quantities{
      {"Z", &ThermoColumns::z}, {"F", &ThermoColumns::f}, {"U", &ThermoColumns::u},
      {"C", &ThermoColumns::c}, {"S", &ThermoColumns::s}};
  const std::string figure_quantity = rc.figure == 2 ? "F" : rc.figure == 3 ? "U" : rc.figure == 4 ? "C"
                                                                                : rc.figure == 5 ? "S" : "";
  const std::string ext = rc.format == "json" ? ".json" : ".csv";
  for (const auto& [name, member] : quantities) {
    if (!figure_quantity.empty() && name != figure_quantity) continue;
    Table t;
    t.meta = base_meta(rc, "thermo");
    t.meta.emplace_back("quantity", name);
    t.meta.emplace_back("dim", std::to_string(cfg.dim));
    t.meta.emplace_back("l", std::to_string(rc.l));
    t.columns.push_back("T");
    for (const auto& b : blocks)
      for (const auto& col : b.curve.columns) {
        const auto tag = fmt::format("theta={:g},method={}", b.theta, to_string(col.method));
        t.columns.push_back(name + "[" + tag + "]");
        t.columns.push_back("in_regime[" + tag + "]");
      }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::vector<double> row{grid[i]};
      for (const auto& b : blocks)
        for (const auto& col : b.curve.columns) {
          row.push_back((col.*member)[i]);
          row.push_back(col.in_regime[i] ? 1.0 : 0.0);
        }
      t.rows.push_back(std::move(row));
    }
    const std::string path = rc.out == "-" ? "-" : rc.out + "_" + name + ext;
    emit(path, out, [&](std::ostream& os) { write_table(t, rc.format, os); });
  }
  return ExitCode::ok;
}

inline int cmd_bounds(const RunConfig& rc, std::ostream& out) {
  if (parse_unit_system(rc.units) != UnitSystem::si) throw DomainError("bounds are dimensional: use --units si");
  if (!(rc.n_level >= 1.0) || rc.n_level != std::floor(rc.n_level) || rc.n_level > 9.2e18)
    throw QuantumNumberError("n_level must be a positive integer");
  const auto cfg = make_oscillator(rc);
  const auto level = static_cast<std::uint64_t>(rc.n_level);
  const auto b = deformation_bounds(cfg, rc.b_field, level);
  const auto b2 = deformation_bounds(cfg, 2.0 * rc.b_field, level);
  Table t;
  t.meta = base_meta(rc, "bounds");
  t.meta.emplace_back("b_field_T", format_number(rc.b_field));
  t.meta.emplace_back("n_level", std::to_string(level));
  t.meta.emplace_back("cyclotron_frequency", format_number(b.cyclotron_frequency));
  t.columns = {"theta_c2_bound", "delta_x_bound", "delta_p_bound", "reference_theta_c2", "reference_delta_x",
               "reference_delta_p", "theta_b_exponent"};
  t.rows.push_back({b.theta_c2_bound, b.delta_x_bound, b.delta_p_bound, 1e33, 3.33e-18, 3.17e-36,
                    std::log2(b2.theta_bound / b.theta_bound)});
  emit(rc.out, out, [&](std::ostream& os) { write_table(t, rc.format, os); });
  return ExitCode::ok;
}

inline int cmd_verify(const RunConfig& rc, std::ostream& out) {
  // Suites use physical grids stated in natural units.
  RunConfig natural = rc;
  natural.units = "natural";
  const auto cfg = make_oscillator(natural);
  const auto params = derive_params(rc.alpha1, rc.alpha2, cfg);
  const auto report = run_verify(rc.suite, params, cfg);
  nlohmann::json j;
  j["version"] = version_string;
  j["suite"] = rc.suite;
  j["passed"] = report.passed();
  auto checks = nlohmann::json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"suite", c.suite},
                      {"name", c.name},
                      {"passed", c.passed},
                      {"measured", std::isfinite(c.measured) ? nlohmann::json(c.measured) : nlohmann::json(nullptr)},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail}});
  j["checks"] = checks;
  emit(rc.out, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return report.passed() ? ExitCode::ok : ExitCode::out_of_regime;
}

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config '" + path + "'");
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("config '" + path + "': " + e.what());
  }
}

inline std::pair<double, double> parse_deformation(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw DomainError("deformation must be 'alpha1,alpha2'");
  try {
    std::size_t used1 = 0, used2 = 0;
    const std::string first = s.substr(0, comma), second = s.substr(comma + 1);
    const double a1 = std::stod(first, &used1);
    const double a2 = std::stod(second, &used2);
    if (used1 != first.size() || used2 != second.size()) throw std::invalid_argument(s);
    return {a1, a2};
  } catch (const std::logic_error&) {
    throw DomainError("deformation '" + s + "' is not 'alpha1,alpha2'");
  }
}

/// Entry point; args excludes the program name. Returns the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Klein-Gordon oscillator with Snyder-de Sitter deformation", "sds_osc"};
  app.set_version_flag("--version", version_string);
  app.require_subcommand(1, 1);

  RunConfig flags;
  std::string config_path;
  double mass_flag = 1.0, omega_flag = 1.0;
  std::vector<std::string> deformation_text;
  bool figure_flags[6] = {false, false, false, false, false, false};
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> overrides;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file; flags override its values");
    auto track = [&](CLI::Option* opt, std::function<void(RunConfig&)> copy) { overrides.emplace_back(opt, std::move(copy)); };
    track(sub->add_option("--units", flags.units, "natural or si")->check(CLI::IsMember({"natural", "si", "SI"})),
          [&](RunConfig& c) { c.units = flags.units; });
    track(sub->add_option("--alpha1", flags.alpha1, "Snyder parameter"), [&](RunConfig& c) { c.alpha1 = flags.alpha1; });
    track(sub->add_option("--alpha2", flags.alpha2, "de Sitter parameter"), [&](RunConfig& c) { c.alpha2 = flags.alpha2; });
    track(sub->add_option("--mass", mass_flag, "particle mass"), [&](RunConfig& c) { c.m = mass_flag; });
    track(sub->add_option("--omega", omega_flag, "angular frequency"), [&](RunConfig& c) { c.omega = omega_flag; });
    track(sub->add_option("--dim", flags.dim, "spatial dimension D"), [&](RunConfig& c) { c.dim = flags.dim; });
    track(sub->add_option("--l", flags.l, "orbital quantum number"), [&](RunConfig& c) { c.l = flags.l; });
    track(sub->add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"})),
          [&](RunConfig& c) { c.format = flags.format; });
    track(sub->add_option("--out", flags.out, "output path ('-' for stdout; prefix for thermo)"),
          [&](RunConfig& c) { c.out = flags.out; });
    track(sub->add_option("--deformation", deformation_text, "alpha1,alpha2 pair (repeatable)"),
          [&](RunConfig& c) {
            c.deformations.clear();
            for (const auto& s : deformation_text) c.deformations.push_back(parse_deformation(s));
          });
  };
  auto n_range = [&](CLI::App* sub) {
    overrides.emplace_back(sub->add_option("--n-min", flags.n_min, "first level"),
                           [&](RunConfig& c) { c.n_min = flags.n_min; });
    overrides.emplace_back(sub->add_option("--n-max", flags.n_max, "last level"),
                           [&](RunConfig& c) { c.n_max = flags.n_max; });
  };

  auto* spectrum = app.add_subcommand("spectrum", "energy table or level spacings");
  common(spectrum);
  n_range(spectrum);
  spectrum->add_flag("--figure1", figure_flags[1], "spacing series for several deformations");

  auto* wave = app.add_subcommand("wavefunction", "momentum-space wavefunction samples");
  common(wave);
  overrides.emplace_back(wave->add_option("--n", flags.n, "principal quantum number"),
                         [&](RunConfig& c) { c.n = flags.n; });
  overrides.emplace_back(wave->add_option("--p-count", flags.p_count, "number of momentum samples"),
                         [&](RunConfig& c) { c.p_count = flags.p_count; });
  overrides.emplace_back(wave->add_flag("--undeformed", flags.undeformed, "undeformed Gaussian-Hermite profile"),
                         [&](RunConfig& c) { c.undeformed = flags.undeformed; });

  auto* thermo = app.add_subcommand("thermo", "thermodynamic curves");
  common(thermo);
  overrides.emplace_back(thermo->add_option("--t-min", flags.t_min, "lowest temperature"),
                         [&](RunConfig& c) { c.t_min = flags.t_min; });
  overrides.emplace_back(thermo->add_option("--t-max", flags.t_max, "highest temperature"),
                         [&](RunConfig& c) { c.t_max = flags.t_max; });
  overrides.emplace_back(thermo->add_option("--t-count", flags.t_count, "grid points"),
                         [&](RunConfig& c) { c.t_count = flags.t_count; });
  overrides.emplace_back(
      thermo->add_option("--t-scale", flags.t_scale, "linear or log")->check(CLI::IsMember({"linear", "log"})),
      [&](RunConfig& c) { c.t_scale = flags.t_scale; });
  overrides.emplace_back(
      thermo->add_option("--method", flags.methods, "direct, highT, em, numeric-derivative or all (repeatable)"),
      [&](RunConfig& c) { c.methods = flags.methods; });
  for (int f = 2; f <= 5; ++f)
    thermo->add_flag("--figure" + std::to_string(f), figure_flags[f],
                     std::string("preset: ") + "FUCS"[f - 2] + " against T for theta in {0, 1e-6, 1e-5}, D = 3");

  auto* bounds = app.add_subcommand("bounds", "deformation bounds from a Penning-trap level");
  common(bounds);
  overrides.emplace_back(bounds->add_option("--b-field", flags.b_field, "magnetic field [T]"),
                         [&](RunConfig& c) { c.b_field = flags.b_field; });
  overrides.emplace_back(bounds->add_option("--n-level", flags.n_level, "level index"),
                         [&](RunConfig& c) { c.n_level = flags.n_level; });

  auto* verify = app.add_subcommand("verify", "run self-check suites, JSON report");
  common(verify);
  overrides.emplace_back(verify->add_option("--suite", flags.suite, "oracles, orthonormality, limits, thermo or all"),
                         [&](RunConfig& c) { c.suite = flags.suite; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ExitCode::ok;
  } catch (const CLI::CallForVersion&) {
    out << version_string << '\n';
    return ExitCode::ok;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return ExitCode::ok;
    }
    err << "error: " << e.what() << '\n';
    return ExitCode::usage;
  }

  try {
    RunConfig rc = config_path.empty() ? RunConfig{} : load_config_file(config_path);
    for (const auto& [opt, copy] : overrides)
      if (opt->count() > 0) copy(rc);
    int chosen = 0;
    for (int f = 1; f <= 5; ++f)
      if (figure_flags[f]) {
        if (chosen) throw DomainError("choose at most one --figureN preset");
        chosen = f;
      }
    if (chosen) rc.figure = chosen;

    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "spectrum") {
      if (rc.figure > 1) throw DomainError("--figure2..5 belong to thermo");
      return cmd_spectrum(rc, out);
    }
    if (name == "wavefunction") return cmd_wavefunction(rc, out);
    if (name == "thermo") {
      if (rc.figure == 1) throw DomainError("--figure1 belongs to spectrum");
      return cmd_thermo(rc, out);
    }
    if (name == "bounds") return cmd_bounds(rc, out);
    return cmd_verify(rc, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::io;
  } catch (const OutOfRegimeError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::out_of_regime;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::out_of_regime;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::usage;
  }
}

}  // namespace sdskgo::cli
