#pragma once

#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eptune/harness/experiment.hpp"

namespace eptune::harness {

using Json = nlohmann::ordered_json;

/// Column keys of one results-table row, in order.
inline const std::vector<std::string>& table_columns() {
  static const std::vector<std::string> cols{"experiment", "type", "kp",     "ki",
                                             "kd",         "ae_train", "ae_test"};
  return cols;
}

inline Json step_metrics_json(const std::optional<StepMetrics>& m) {
  if (!m) return nullptr;
  Json j;
  j["rise_time"] = m->rise_time ? Json(*m->rise_time) : Json(nullptr);
  j["overshoot"] = m->overshoot;
  j["steady_state_error"] = m->steady_state_error;
  return j;
}

inline Json table_rows_json(const ResultRecord& r) {
  Json rows = Json::array();
  for (Channel c : kChannels) {
    const ChannelResult& ch = r[c];
    rows.push_back({{"experiment", r.experiment},
                    {"type", channel_name(c)},
                    {"kp", ch.gains.kp},
                    {"ki", ch.gains.ki},
                    {"kd", ch.gains.kd},
                    {"ae_train", ch.ae_train},
                    {"ae_test", ch.ae_test}});
  }
  return rows;
}

inline Json channel_plant_json(const ChannelPlant& p) {
  return {{"dc_gain", p.dc_gain},
          {"time_constant", p.time_constant},
          {"actuator_limit", p.actuator_limit},
          {"initial_velocity", p.initial_velocity}};
}

inline Json route_json(const RouteSpec& r) {
  return {{"start", r.start}, {"end", r.end}, {"phase_duration", r.phase_duration}};
}

inline Json spec_json(const ExperimentSpec& spec) {
  const auto interval = [](const Interval& i) { return Json{{"low", i.low}, {"high", i.high}}; };
  Json ep;
  ep["population_size"] = spec.ep.population_size;
  ep["max_generations"] = spec.ep.max_generations;
  ep["ae_target"] = spec.ep.ae_target;
  ep["mutation"] = spec.ep.mutation.kind == MutationKind::Absolute ? "absolute" : "scaled";
  ep["sigma_absolute"] = spec.ep.mutation.sigma_absolute;
  ep["sigma_scaled"] = spec.ep.mutation.sigma_scaled;
  ep["seed"] = spec.ep.rng_seed;
  ep["init"] = {{"kp", interval(spec.ep.init.kp)},
                {"ki", interval(spec.ep.init.ki)},
                {"kd", interval(spec.ep.init.kd)}};
  Json j;
  j["experiment"] = spec.id;
  j["ep"] = ep;
  j["plant"] = {{"linear", channel_plant_json(spec.plant.linear)},
                {"angular", channel_plant_json(spec.plant.angular)}};
  j["route"] = {{"train", route_json(spec.train_route)}, {"test", route_json(spec.test_route)}};
  j["sim"] = {{"sample_rate", spec.sim.sample_rate}};
  j["fitness"] = {{"worst_case_ae", spec.worst_case_ae}};
  return j;
}

/// Contents of result.json: the results-table rows, step metrics, run status and
/// the full spec including the seed.
inline Json result_json(const ResultRecord& r, const ExperimentSpec& spec) {
  Json j;
  j["experiment"] = r.experiment;
  j["seed"] = r.seed;
  j["stop_reason"] = to_string(r.stop_reason);
  j["generations_evaluated"] = r.generations_evaluated;
  j["table"] = table_rows_json(r);
  Json steps;
  for (Channel c : kChannels) {
    steps[channel_name(c)] = {{"train", step_metrics_json(r[c].step_train)},
                              {"test", step_metrics_json(r[c].step_test)}};
  }
  j["step_metrics"] = steps;
  j["spec"] = spec_json(spec);
  return j;
}

namespace detail {

// 7.78e-02 style for gains, plain "0" for an exact zero.
inline std::string format_gain(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

inline std::string format_ae(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

}  // namespace detail

/// Plain-text results table, two rows per experiment.
inline std::string render_results_table(std::span<const ResultRecord> records) {
  constexpr std::size_t w = 10;
  std::string out;
  const char* headers[] = {"Experiment", "Type", "kp", "ki", "kd", "AE train", "AE Test"};
  for (const char* h : headers) out += detail::pad(h, w + 1);
  out += '\n';
  for (const ResultRecord& r : records) {
    for (Channel c : kChannels) {
      const ChannelResult& ch = r[c];
      out += detail::pad(std::to_string(r.experiment), w + 1);
      out += detail::pad(channel_name(c), w + 1);
      out += detail::pad(detail::format_gain(ch.gains.kp), w + 1);
      out += detail::pad(detail::format_gain(ch.gains.ki), w + 1);
      out += detail::pad(detail::format_gain(ch.gains.kd), w + 1);
      out += detail::pad(detail::format_ae(ch.ae_train), w + 1);
      out += detail::pad(detail::format_ae(ch.ae_test), w + 1);
      out += '\n';
    }
  }
  return out;
}

inline std::string render_results_table(const ResultRecord& record) {
  return render_results_table(std::span<const ResultRecord>(&record, 1));
}

}  // namespace eptune::harness
