#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "eptune/ep.hpp"
#include "eptune/errors.hpp"
#include "eptune/fitness.hpp"
#include "eptune/plant.hpp"

namespace eptune::harness {

struct ExperimentSpec {
  int id = 1;
  EPConfig ep{};
  RouteSpec train_route = RouteSpec::train();
  RouteSpec test_route = RouteSpec::test();
  PlantParams plant{};
  SimConfig sim{};
  double worst_case_ae = kWorstCaseAe;
  std::filesystem::path output_directory = ".";

  void validate() const {
    ep.validate();
    train_route.validate();
    test_route.validate();
    plant.validate();
    sim.validate();
    if (!(worst_case_ae > 0.0)) throw ContractViolation("worst_case_ae must be > 0");
  }
};

inline bool is_experiment_id(int id) noexcept { return id >= 1 && id <= 3; }

/// The three published configurations: 1 = absolute mutation with 10 members,
/// 2 = scaled mutation with 10, 3 = scaled mutation with 20.
inline ExperimentSpec make_experiment(int id, std::uint64_t seed = 0,
                                      std::filesystem::path output_directory = ".") {
  if (!is_experiment_id(id))
    throw ContractViolation("unknown experiment id " + std::to_string(id) +
                            "; valid ids are 1, 2, 3");
  ExperimentSpec spec;
  spec.id = id;
  spec.ep.mutation.kind = id == 1 ? MutationKind::Absolute : MutationKind::Scaled;
  spec.ep.population_size = id == 3 ? 20 : 10;
  spec.ep.rng_seed = seed;
  spec.output_directory = std::move(output_directory);
  return spec;
}

struct ChannelResult {
  Gains gains;
  double ae_train = 0.0;
  double ae_test = 0.0;
  // Empty when the route has no step (start == end).
  std::optional<StepMetrics> step_train;
  std::optional<StepMetrics> step_test;
};

/// One experiment's row pair in the results table, plus step metrics.
struct ResultRecord {
  int experiment = 0;
  std::uint64_t seed = 0;
  ChannelResult linear;
  ChannelResult angular;
  StopReason stop_reason = StopReason::GenerationLimit;
  std::size_t generations_evaluated = 0;

  const ChannelResult& operator[](Channel c) const noexcept {
    return c == Channel::Linear ? linear : angular;
  }
  ChannelResult& operator[](Channel c) noexcept { return c == Channel::Linear ? linear : angular; }
};

struct ExperimentOutcome {
  ResultRecord result;
  EpResult ep;
  SimTrace train_trace;
  SimTrace test_trace;
};

/// Trains on the train route, then replays the best individual on the test route.
/// Nothing is written to disk.
inline ExperimentOutcome execute_experiment(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentOutcome out;
  out.ep = run_ep(spec.ep, [&](const Individual& ind) {
    return fitness_of(ind, spec.train_route, spec.plant, spec.sim, spec.worst_case_ae);
  });

  const Individual& best = out.ep.best;
  const FitnessRecord test_fitness =
      fitness_of(best, spec.test_route, spec.plant, spec.sim, spec.worst_case_ae);
  out.train_trace = simulate_route(best, spec.train_route, spec.plant, spec.sim);
  out.test_trace = simulate_route(best, spec.test_route, spec.plant, spec.sim);

  ResultRecord& r = out.result;
  r.experiment = spec.id;
  r.seed = spec.ep.rng_seed;
  r.stop_reason = out.ep.stop_reason;
  r.generations_evaluated = out.ep.history.size();
  for (Channel c : kChannels) {
    ChannelResult& ch = r[c];
    ch.gains = best[c];
    ch.ae_train = out.ep.best_fitness[c];
    ch.ae_test = test_fitness[c];
    if (spec.train_route.start != spec.train_route.end)
      ch.step_train = step_metrics(out.train_trace[c], spec.train_route);
    if (spec.test_route.start != spec.test_route.end)
      ch.step_test = step_metrics(out.test_trace[c], spec.test_route);
  }
  return out;
}

}  // namespace eptune::harness
