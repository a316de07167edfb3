#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "qdyn/propagators.hpp"
#include "qdyn/types.hpp"

namespace qdyn {

/// Flat key=value run description. Every key round-trips through to_text /
/// from_text losslessly; unknown keys are rejected so typos cannot silently
/// fall back to defaults.
struct RunConfig {
  std::string command = "simulate";
  std::string model = "decay";  // decay | dephasing
  double a = 0.4;
  double chi = 0.0;
  double v = 0.0;
  double rate_a = 1.0;  // gamma in decay mode, Gamma in dephasing mode
  double rate_b = 1.0;
  double omega0 = 0.0;
  double t_end = 5.0;
  double dt = 0.0;  // 0 selects the dt_max rule
  std::string method = "rk4";  // rk4 | exp
  int sample_every = 1;
  double horizon = 10.0;
  long grid_n = 0;  // 0 selects the default grid rule
  std::string output;  // empty writes to stdout
  // Comma-separated value lists consumed by the sweep command; a scalar run
  // ignores them.
  std::string sweep_a;
  std::string sweep_chi;
  std::string sweep_v;
  std::string sweep_rate;

  static RunConfig from_text(const std::string& text);
  std::string to_text() const;

  ModelParams to_model_params() const {
    if (rate_a < 0.0 || rate_b < 0.0) {
      throw ConfigError("rates must be >= 0");
    }
    if (model == "decay") {
      return ModelParams::decay(v, rate_a, rate_b, omega0);
    }
    if (model == "dephasing") {
      return ModelParams::dephasing(v, rate_a, rate_b, omega0);
    }
    throw ConfigError("model must be 'decay' or 'dephasing', got '" + model +
                      "'");
  }

  WernerFamilyInit to_init() const {
    if (a < 0.0 || a > 1.0) {
      throw ConfigError("a must lie in [0, 1], got " + std::to_string(a));
    }
    return WernerFamilyInit{a, chi};
  }

  IntegratorConfig to_integrator(const ModelParams& p) const {
    IntegratorConfig cfg;
    cfg.dt = dt > 0.0 ? dt : dt_max(p);
    cfg.t_end = t_end;
    if (method == "rk4") {
      cfg.method = Method::RK4Fixed;
    } else if (method == "exp") {
      cfg.method = Method::ExpOracle;
    } else {
      throw ConfigError("method must be 'rk4' or 'exp', got '" + method + "'");
    }
    cfg.sample_every = sample_every;
    return cfg;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse '" + value +
                      "' as a number");
  }
}

inline long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse '" + value +
                      "' as an integer");
  }
}

inline std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace detail

inline RunConfig RunConfig::from_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string stripped = detail::trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line without '=': " + stripped);
    }
    const std::string key = detail::trim(stripped.substr(0, eq));
    const std::string value = detail::trim(stripped.substr(eq + 1));

    if (key == "command") cfg.command = value;
    else if (key == "model") cfg.model = value;
    else if (key == "a") cfg.a = detail::parse_double(key, value);
    else if (key == "chi") cfg.chi = detail::parse_double(key, value);
    else if (key == "v") cfg.v = detail::parse_double(key, value);
    else if (key == "rate_a") cfg.rate_a = detail::parse_double(key, value);
    else if (key == "rate_b") cfg.rate_b = detail::parse_double(key, value);
    else if (key == "omega0") cfg.omega0 = detail::parse_double(key, value);
    else if (key == "t_end") cfg.t_end = detail::parse_double(key, value);
    else if (key == "dt") cfg.dt = detail::parse_double(key, value);
    else if (key == "method") cfg.method = value;
    else if (key == "sample_every")
      cfg.sample_every = static_cast<int>(detail::parse_long(key, value));
    else if (key == "horizon") cfg.horizon = detail::parse_double(key, value);
    else if (key == "grid_n") cfg.grid_n = detail::parse_long(key, value);
    else if (key == "output") cfg.output = value;
    else if (key == "sweep_a") cfg.sweep_a = value;
    else if (key == "sweep_chi") cfg.sweep_chi = value;
    else if (key == "sweep_v") cfg.sweep_v = value;
    else if (key == "sweep_rate") cfg.sweep_rate = value;
    else throw ConfigError("unknown config key '" + key + "'");
  }
  return cfg;
}

inline std::string RunConfig::to_text() const {
  std::string out;
  out += "command=" + command + "\n";
  out += "model=" + model + "\n";
  out += "a=" + detail::format_full(a) + "\n";
  out += "chi=" + detail::format_full(chi) + "\n";
  out += "v=" + detail::format_full(v) + "\n";
  out += "rate_a=" + detail::format_full(rate_a) + "\n";
  out += "rate_b=" + detail::format_full(rate_b) + "\n";
  out += "omega0=" + detail::format_full(omega0) + "\n";
  out += "t_end=" + detail::format_full(t_end) + "\n";
  out += "dt=" + detail::format_full(dt) + "\n";
  out += "method=" + method + "\n";
  out += "sample_every=" + std::to_string(sample_every) + "\n";
  out += "horizon=" + detail::format_full(horizon) + "\n";
  out += "grid_n=" + std::to_string(grid_n) + "\n";
  out += "output=" + output + "\n";
  out += "sweep_a=" + sweep_a + "\n";
  out += "sweep_chi=" + sweep_chi + "\n";
  out += "sweep_v=" + sweep_v + "\n";
  out += "sweep_rate=" + sweep_rate + "\n";
  return out;
}

/// Comma-separated numbers, e.g. "0,0.25,0.5". An empty string yields the
/// single fallback value.
inline std::vector<double> parse_value_list(const std::string& key,
                                            const std::string& list,
                                            double fallback) {
  if (detail::trim(list).empty()) return {fallback};
  std::vector<double> out;
  std::string item;
  std::istringstream in(list);
  while (std::getline(in, item, ',')) {
    out.push_back(detail::parse_double(key, detail::trim(item)));
  }
  return out;
}

}  // namespace qdyn
