#pragma once

// Flat `key = value` configuration. Blank lines and lines starting with '#' are
// ignored. Recognized keys:
//
//   plant.{linear,angular}.{dc_gain,time_constant,actuator_limit,initial_velocity}
//   route.{train,test}.{start,end,phase_duration}
//   sim.sample_rate
//   ep.population_size  ep.max_generations  ep.ae_target  ep.seed
//   ep.mutation = absolute | scaled
//   ep.sigma_absolute  ep.sigma_scaled
//   ep.init.{kp,ki,kd}.{low,high}
//   fitness.worst_case_ae
//   grid.{kp,ki,kd} = v1, v2, ...  or  first:step:last   (oracle only)

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "eptune/errors.hpp"
#include "eptune/harness/csv.hpp"
#include "eptune/harness/experiment.hpp"

namespace eptune::harness {

struct ConfigEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline std::string where(const ConfigEntry& e) {
  return "config line " + std::to_string(e.line) + " (" + e.key + ")";
}

inline double as_real(const ConfigEntry& e) {
  try {
    const double v = parse_real(trim(e.value));
    if (!std::isfinite(v)) throw ContractViolation("non-finite");
    return v;
  } catch (const ContractViolation&) {
    throw ConfigError(where(e) + ": expected a finite number, got '" + e.value + "'");
  }
}

inline std::uint64_t as_unsigned(const ConfigEntry& e) {
  const auto v = trim(e.value);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
    throw ConfigError(where(e) + ": expected a nonnegative integer, got '" + e.value + "'");
  return out;
}

}  // namespace detail

inline std::vector<ConfigEntry> parse_config_text(std::string_view text) {
  std::vector<ConfigEntry> entries;
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    ConfigEntry e{std::string(detail::trim(line.substr(0, eq))),
                  std::string(detail::trim(line.substr(eq + 1))), line_no};
    if (e.key.empty() || e.value.empty())
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
    entries.push_back(std::move(e));
  }
  return entries;
}

inline std::vector<ConfigEntry> load_config(const std::filesystem::path& path) {
  try {
    return parse_config_text(read_text_file(path));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

/// Expands "a, b, c" or "first:step:last" into a value list.
inline std::vector<double> parse_value_list(const ConfigEntry& e) {
  std::vector<double> out;
  const std::string_view v = e.value;
  if (v.find(':') != std::string_view::npos) {
    const auto parts = split(v, ':');
    if (parts.size() != 3) throw ConfigError(detail::where(e) + ": range must be first:step:last");
    const auto part = [&](std::size_t i) {
      return detail::as_real({e.key, std::string(parts[i]), e.line});
    };
    const double first = part(0), step = part(1), last = part(2);
    if (!(step > 0.0) || last < first)
      throw ConfigError(detail::where(e) + ": range needs step > 0 and last >= first");
    const auto n = static_cast<std::size_t>(std::llround((last - first) / step));
    for (std::size_t i = 0; i <= n; ++i) out.push_back(first + static_cast<double>(i) * step);
    return out;
  }
  for (std::string_view item : split(v, ',')) {
    out.push_back(detail::as_real({e.key, std::string(item), e.line}));
  }
  return out;
}

/// Applies recognized keys to the spec. `grid.*` keys are accepted and skipped;
/// anything else unknown is an error.
inline void apply_config(const std::vector<ConfigEntry>& entries, ExperimentSpec& spec) {
  using Setter = std::function<void(const ConfigEntry&)>;
  std::map<std::string, Setter, std::less<>> setters;
  const auto real = [&](const std::string& key, double& field) {
    setters[key] = [&field](const ConfigEntry& e) { field = detail::as_real(e); };
  };

  for (Channel c : kChannels) {
    const std::string p = std::string("plant.") + (c == Channel::Linear ? "linear" : "angular");
    real(p + ".dc_gain", spec.plant[c].dc_gain);
    real(p + ".time_constant", spec.plant[c].time_constant);
    real(p + ".actuator_limit", spec.plant[c].actuator_limit);
    real(p + ".initial_velocity", spec.plant[c].initial_velocity);
  }
  for (auto* route : {&spec.train_route, &spec.test_route}) {
    const std::string p = route == &spec.train_route ? "route.train" : "route.test";
    real(p + ".start", route->start);
    real(p + ".end", route->end);
    real(p + ".phase_duration", route->phase_duration);
  }
  real("sim.sample_rate", spec.sim.sample_rate);
  real("ep.ae_target", spec.ep.ae_target);
  real("ep.sigma_absolute", spec.ep.mutation.sigma_absolute);
  real("ep.sigma_scaled", spec.ep.mutation.sigma_scaled);
  real("ep.init.kp.low", spec.ep.init.kp.low);
  real("ep.init.kp.high", spec.ep.init.kp.high);
  real("ep.init.ki.low", spec.ep.init.ki.low);
  real("ep.init.ki.high", spec.ep.init.ki.high);
  real("ep.init.kd.low", spec.ep.init.kd.low);
  real("ep.init.kd.high", spec.ep.init.kd.high);
  real("fitness.worst_case_ae", spec.worst_case_ae);
  setters["ep.population_size"] = [&](const ConfigEntry& e) {
    spec.ep.population_size = detail::as_unsigned(e);
  };
  setters["ep.max_generations"] = [&](const ConfigEntry& e) {
    spec.ep.max_generations = detail::as_unsigned(e);
  };
  setters["ep.seed"] = [&](const ConfigEntry& e) { spec.ep.rng_seed = detail::as_unsigned(e); };
  setters["ep.mutation"] = [&](const ConfigEntry& e) {
    if (e.value == "absolute") {
      spec.ep.mutation.kind = MutationKind::Absolute;
    } else if (e.value == "scaled") {
      spec.ep.mutation.kind = MutationKind::Scaled;
    } else {
      throw ConfigError(detail::where(e) + ": expected 'absolute' or 'scaled'");
    }
  };

  for (const ConfigEntry& e : entries) {
    if (e.key.rfind("grid.", 0) == 0) continue;
    const auto it = setters.find(e.key);
    if (it == setters.end()) throw ConfigError(detail::where(e) + ": unknown key");
    it->second(e);
  }
  try {
    spec.validate();
  } catch (const ContractViolation& err) {
    throw ConfigError(std::string("invalid configuration: ") + err.what());
  }
}

}  // namespace eptune::harness
