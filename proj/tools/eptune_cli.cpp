// eptune: run the tuning experiments, replay gains on a route, or grid-search.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eptune/eptune.hpp"
#include "eptune/harness/config.hpp"
#include "eptune/harness/csv.hpp"
#include "eptune/harness/grid_oracle.hpp"
#include "eptune/harness/report.hpp"
#include "eptune/harness/run.hpp"

namespace {

using namespace eptune;
using namespace eptune::harness;

Individual parse_gains(const std::string& text) {
  const auto cells = split(text, ',');
  if (cells.size() != 6)
    throw ContractViolation("--gains needs six comma-separated values kpv,kiv,kdv,kpa,kia,kda");
  std::array<double, 6> v{};
  for (std::size_t i = 0; i < 6; ++i) v[i] = parse_real(cells[i]);
  const Individual ind = Individual::from_array(v);
  if (!ind.valid()) throw ContractViolation("gains must be finite and nonnegative");
  return ind;
}

RouteSpec pick_route(const ExperimentSpec& spec, const std::string& name) {
  return name == "train" ? spec.train_route : spec.test_route;
}

void print_metrics(std::ostream& os, const SimTrace& trace, const RouteSpec& route) {
  for (Channel c : kChannels) {
    os << channel_name(c) << ": AE " << format_real(average_error(trace[c]));
    if (route.start != route.end) {
      const StepMetrics m = step_metrics(trace[c], route);
      os << ", rise_time " << (m.rise_time ? format_real(*m.rise_time) : std::string("n/a"))
         << ", overshoot " << format_real(m.overshoot) << ", steady_state_error "
         << format_real(m.steady_state_error);
    }
    os << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolutionary-programming PID tuner for a two-channel vehicle model"};
  app.require_subcommand(1);

  int experiment = 0;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string tune_config;
  auto* tune = app.add_subcommand("tune", "Run experiment 1, 2 or 3 and write its logs");
  tune->add_option("--experiment", experiment, "Experiment id (1, 2 or 3)")->required();
  auto* seed_opt = tune->add_option("--seed", seed, "RNG seed (default 0)");
  tune->add_option("--out", out_dir, "Output directory");
  tune->add_option("--config", tune_config, "key = value override file");

  std::string gains_text;
  std::string step_route = "test";
  std::string step_out = "step_trace.csv";
  std::string step_config;
  auto* step = app.add_subcommand("step", "Simulate fixed gains on a route and report step metrics");
  step->add_option("--gains", gains_text, "kpv,kiv,kdv,kpa,kia,kda")->required();
  step->add_option("--route", step_route, "train or test")
      ->check(CLI::IsMember({"train", "test"}));
  step->add_option("--out", step_out, "Trace CSV output path");
  step->add_option("--config", step_config, "key = value override file");

  std::string grid_file;
  std::string oracle_route = "train";
  std::string oracle_config;
  std::string oracle_out;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive grid search per channel");
  oracle->add_option("--grid", grid_file, "Grid file (grid.kp / grid.ki / grid.kd keys)")
      ->required();
  oracle->add_option("--route", oracle_route, "train or test")
      ->check(CLI::IsMember({"train", "test"}));
  oracle->add_option("--config", oracle_config, "key = value override file");
  oracle->add_option("--out", oracle_out, "Optional JSON output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*tune) {
      if (!is_experiment_id(experiment)) {
        std::cerr << "error: unknown experiment " << experiment << "; valid ids are 1, 2, 3\n";
        return 2;
      }
      ExperimentSpec spec = make_experiment(experiment, seed, out_dir);
      if (!tune_config.empty()) {
        apply_config(load_config(tune_config), spec);
        if (*seed_opt) spec.ep.rng_seed = seed;
      }
      const ResultRecord r = run_experiment(spec);
      std::cout << render_results_table(r);
      std::cout << "stop: " << to_string(r.stop_reason) << " after " << r.generations_evaluated
                << " generations; files in " << spec.output_directory.string() << '\n';
    } else if (*step) {
      const Individual ind = parse_gains(gains_text);
      ExperimentSpec spec = make_experiment(1);
      if (!step_config.empty()) apply_config(load_config(step_config), spec);
      const RouteSpec route = pick_route(spec, step_route);
      const SimTrace trace = simulate_route(ind, route, spec.plant, spec.sim);
      write_text_file(step_out, trace_csv(trace));
      print_metrics(std::cout, trace, route);
      std::cout << "trace written to " << step_out << '\n';
    } else if (*oracle) {
      const auto entries = load_config(grid_file);
      ExperimentSpec spec = make_experiment(1);
      apply_config(entries, spec);
      if (!oracle_config.empty()) apply_config(load_config(oracle_config), spec);
      const Grid grid = grid_from_config(entries);
      const RouteSpec route = pick_route(spec, oracle_route);
      const OracleResult res = grid_oracle(route, spec.plant, spec.sim, grid, spec.worst_case_ae);
      Json j;
      j["route"] = oracle_route;
      j["evaluated_per_channel"] = res.evaluated_per_channel;
      for (Channel c : kChannels) {
        j[channel_name(c)] = {{"kp", res.best[c].kp},
                              {"ki", res.best[c].ki},
                              {"kd", res.best[c].kd},
                              {"ae", res.best_fitness[c]}};
      }
      if (!oracle_out.empty()) write_text_file(oracle_out, j.dump(2) + "\n");
      std::cout << j.dump(2) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
