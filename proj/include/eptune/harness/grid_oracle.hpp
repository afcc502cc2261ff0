#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "eptune/errors.hpp"
#include "eptune/fitness.hpp"
#include "eptune/harness/config.hpp"
#include "eptune/plant.hpp"

namespace eptune::harness {

/// Candidate values per gain, shared by both channels.
struct Grid {
  std::vector<double> kp;
  std::vector<double> ki;
  std::vector<double> kd;

  std::size_t size() const noexcept { return kp.size() * ki.size() * kd.size(); }
};

struct OracleResult {
  Individual best;
  FitnessRecord best_fitness;
  std::size_t evaluated_per_channel = 0;
};

/// Exhaustive search of the grid's cross product, each channel on its own.
/// Ties go to the lexicographically smallest (kp, ki, kd).
inline OracleResult grid_oracle(const RouteSpec& route, const PlantParams& params,
                                const SimConfig& sim, const Grid& grid,
                                double worst_case_ae = kWorstCaseAe) {
  if (grid.size() == 0) throw ContractViolation("grid must have at least one value per gain");
  route.validate();
  params.validate();
  sim.validate();

  const auto sorted = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  const auto kp = sorted(grid.kp), ki = sorted(grid.ki), kd = sorted(grid.kd);

  OracleResult out;
  out.evaluated_per_channel = kp.size() * ki.size() * kd.size();
  for (Channel c : kChannels) {
    bool have = false;
    double best_ae = 0.0;
    Gains best{};
    for (double p : kp) {
      for (double i : ki) {
        for (double d : kd) {
          const Gains g{p, i, d};
          double ae = worst_case_ae;
          try {
            ae = average_error(simulate_channel(g, route, params[c], sim));
          } catch (const DivergenceError&) {
          }
          if (!have || ae < best_ae) {
            have = true;
            best_ae = ae;
            best = g;
          }
        }
      }
    }
    out.best[c] = best;
    (c == Channel::Linear ? out.best_fitness.ae_linear : out.best_fitness.ae_angular) = best_ae;
  }
  return out;
}

/// Reads grid.kp / grid.ki / grid.kd; a missing key defaults to {0}.
inline Grid grid_from_config(const std::vector<ConfigEntry>& entries) {
  Grid g{{0.0}, {0.0}, {0.0}};
  for (const ConfigEntry& e : entries) {
    if (e.key == "grid.kp") {
      g.kp = parse_value_list(e);
    } else if (e.key == "grid.ki") {
      g.ki = parse_value_list(e);
    } else if (e.key == "grid.kd") {
      g.kd = parse_value_list(e);
    }
  }
  for (const auto* v : {&g.kp, &g.ki, &g.kd}) {
    for (double x : *v) {
      if (!(x >= 0.0)) throw ConfigError("grid values must be nonnegative");
    }
  }
  return g;
}

}  // namespace eptune::harness
