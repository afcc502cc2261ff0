#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eptune/errors.hpp"
#include "eptune/gains.hpp"
#include "eptune/mutation.hpp"

namespace eptune {

/// Random source used by the optimizer. A fixed engine keeps seeded runs reproducible.
using Rng = std::mt19937_64;

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// Uniform initialization bounds, shared by both channels.
struct InitSpec {
  Interval kp{0.0, 1.0};
  Interval ki{0.0, 0.1};
  Interval kd{0.0, 0.01};

  void validate() const {
    for (const Interval& b : {kp, ki, kd}) {
      if (!(b.low >= 0.0) || !(b.low <= b.high) || !std::isfinite(b.high))
        throw ContractViolation("init bounds need 0 <= low <= high");
    }
  }
};

struct EPConfig {
  std::size_t population_size = 10;
  std::size_t max_generations = 100;
  double ae_target = 0.01;
  MutationSpec mutation{};
  InitSpec init{};
  std::uint64_t rng_seed = 0;

  void validate() const {
    if (population_size < 1) throw ContractViolation("population_size must be >= 1");
    if (max_generations < 1) throw ContractViolation("max_generations must be >= 1");
    if (!(ae_target > 0.0)) throw ContractViolation("ae_target must be > 0");
    mutation.validate();
    init.validate();
  }
};

struct Population {
  std::size_t generation_index = 0;
  std::vector<Individual> members;
};

/// Average error of one individual on one route, per channel.
struct FitnessRecord {
  double ae_linear = 0.0;
  double ae_angular = 0.0;

  double operator[](Channel c) const noexcept {
    return c == Channel::Linear ? ae_linear : ae_angular;
  }

  friend bool operator==(const FitnessRecord&, const FitnessRecord&) = default;
};

struct MemberResult {
  Individual individual;
  FitnessRecord fitness;

  friend bool operator==(const MemberResult&, const MemberResult&) = default;
};

struct FittestIndices {
  std::size_t linear = 0;
  std::size_t angular = 0;

  friend bool operator==(const FittestIndices&, const FittestIndices&) = default;
};

/// Index of the smallest finite AE per channel, independently. Ties go to the
/// lowest index; non-finite entries never win.
inline FittestIndices select_fittest(std::span<const MemberResult> members) {
  if (members.empty()) throw EvaluationFailure("cannot select from an empty generation");
  FittestIndices out;
  for (Channel c : kChannels) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const double ae = members[i].fitness[c];
      if (!std::isfinite(ae)) continue;
      if (!best || ae < members[*best].fitness[c]) best = i;
    }
    if (!best)
      throw EvaluationFailure(std::string("every ") + channel_name(c) +
                              " AE in the generation is non-finite");
    (c == Channel::Linear ? out.linear : out.angular) = *best;
  }
  return out;
}

struct GenerationRecord {
  std::size_t generation_index = 0;
  std::vector<MemberResult> members;
  FittestIndices fittest;

  static GenerationRecord make(std::size_t generation_index, std::vector<MemberResult> members) {
    GenerationRecord r{generation_index, std::move(members), {}};
    r.fittest = select_fittest(r.members);
    return r;
  }

  /// Linear gains of the linear winner spliced with angular gains of the angular winner.
  Individual composite() const {
    return {members.at(fittest.linear).individual.linear,
            members.at(fittest.angular).individual.angular};
  }

  FitnessRecord best_fitness() const {
    return {members.at(fittest.linear).fitness.ae_linear,
            members.at(fittest.angular).fitness.ae_angular};
  }

  friend bool operator==(const GenerationRecord&, const GenerationRecord&) = default;
};

inline FittestIndices select_fittest(const GenerationRecord& record) {
  return select_fittest(std::span<const MemberResult>(record.members));
}

/// Generation 0. Draws are made member by member in the order
/// kpv, kiv, kdv, kpa, kia, kda.
template <class Urbg>
Population init_population(const EPConfig& config, Urbg& rng) {
  const auto draw = [&rng](const Interval& b) {
    return std::uniform_real_distribution<double>(b.low, b.high)(rng);
  };
  Population pop;
  pop.members.reserve(config.population_size);
  for (std::size_t i = 0; i < config.population_size; ++i) {
    Individual ind;
    for (Channel c : kChannels) {
      ind[c].kp = draw(config.init.kp);
      ind[c].ki = draw(config.init.ki);
      ind[c].kd = draw(config.init.kd);
    }
    pop.members.push_back(ind);
  }
  return pop;
}

/// Member 0 is the unmutated composite parent; the rest are its mutants.
template <class Urbg>
Population next_generation(const Population& prev, const GenerationRecord& record,
                           const EPConfig& config, Urbg& rng) {
  if (record.members.size() != prev.members.size())
    throw ContractViolation("generation record does not match population");
  const FittestIndices idx = select_fittest(record);
  const Individual parent{prev.members.at(idx.linear).linear,
                          prev.members.at(idx.angular).angular};

  Population next;
  next.generation_index = prev.generation_index + 1;
  next.members.reserve(config.population_size);
  next.members.push_back(parent);
  while (next.members.size() < config.population_size)
    next.members.push_back(mutate_individual(parent, config.mutation, rng));
  return next;
}

enum class StopReason { TargetReached, GenerationLimit };

constexpr const char* to_string(StopReason r) noexcept {
  return r == StopReason::TargetReached ? "TargetReached" : "GenerationLimit";
}

struct EpResult {
  Individual best;
  FitnessRecord best_fitness;
  std::vector<GenerationRecord> history;
  StopReason stop_reason = StopReason::GenerationLimit;
};

/// Evaluate, select, stop-check, mutate. The evaluator maps an Individual to a
/// FitnessRecord and must be deterministic. Stops when both channel winners are
/// strictly below ae_target, or after max_generations evaluated generations.
template <class Evaluator>
EpResult run_ep(const EPConfig& config, Evaluator&& evaluate) {
  config.validate();
  Rng rng(config.rng_seed);
  Population pop = init_population(config, rng);

  EpResult result;
  result.history.reserve(config.max_generations);
  for (;;) {
    std::vector<MemberResult> evaluated;
    evaluated.reserve(pop.members.size());
    for (std::size_t m = 0; m < pop.members.size(); ++m) {
      try {
        evaluated.push_back({pop.members[m], evaluate(pop.members[m])});
      } catch (const std::exception& e) {
        throw EvaluationFailure("evaluation failed at generation " +
                                    std::to_string(pop.generation_index) + ", member " +
                                    std::to_string(m) + ": " + e.what(),
                                pop.generation_index, m);
      }
    }

    GenerationRecord record;
    try {
      record = GenerationRecord::make(pop.generation_index, std::move(evaluated));
    } catch (const EvaluationFailure& e) {
      throw EvaluationFailure(std::string(e.what()) + " (generation " +
                                  std::to_string(pop.generation_index) + ")",
                              pop.generation_index);
    }

    const FitnessRecord gen_best = record.best_fitness();
    const Individual gen_parent = record.composite();
    if (result.history.empty()) {
      result.best = gen_parent;
      result.best_fitness = gen_best;
    } else {
      if (gen_best.ae_linear < result.best_fitness.ae_linear) {
        result.best.linear = gen_parent.linear;
        result.best_fitness.ae_linear = gen_best.ae_linear;
      }
      if (gen_best.ae_angular < result.best_fitness.ae_angular) {
        result.best.angular = gen_parent.angular;
        result.best_fitness.ae_angular = gen_best.ae_angular;
      }
    }
    result.history.push_back(record);

    if (gen_best.ae_linear < config.ae_target && gen_best.ae_angular < config.ae_target) {
      result.stop_reason = StopReason::TargetReached;
      break;
    }
    if (result.history.size() >= config.max_generations) {
      result.stop_reason = StopReason::GenerationLimit;
      break;
    }
    pop = next_generation(pop, result.history.back(), config, rng);
  }
  return result;
}

}  // namespace eptune
