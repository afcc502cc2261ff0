#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "eptune/errors.hpp"
#include "eptune/gains.hpp"
#include "eptune/pid.hpp"

namespace eptune {

/// First-order lag with a saturated actuator, standing in for one velocity loop
/// of the vehicle.
struct ChannelPlant {
  double dc_gain = 1.0;
  double time_constant = 0.5;  // seconds
  double actuator_limit = 2.0;
  double initial_velocity = 0.0;

  void validate() const {
    if (!(dc_gain > 0.0) || !(time_constant > 0.0) || !(actuator_limit > 0.0) ||
        !std::isfinite(dc_gain) || !std::isfinite(time_constant) ||
        !std::isfinite(actuator_limit) || !std::isfinite(initial_velocity))
      throw ContractViolation("plant needs positive finite dc_gain, time_constant, actuator_limit");
  }
};

struct PlantParams {
  ChannelPlant linear{1.0, 0.5, 2.0, 0.0};
  ChannelPlant angular{1.0, 0.3, 2.0, 0.0};

  const ChannelPlant& operator[](Channel c) const noexcept {
    return c == Channel::Linear ? linear : angular;
  }
  ChannelPlant& operator[](Channel c) noexcept { return c == Channel::Linear ? linear : angular; }

  void validate() const {
    linear.validate();
    angular.validate();
  }
};

/// Hold `start` for one phase, then `end` for one phase. Both channels follow it.
struct RouteSpec {
  double start = 0.0;
  double end = 0.0;
  double phase_duration = 3.0;  // seconds

  static RouteSpec train() { return {-0.3, 0.3, 3.0}; }
  static RouteSpec test() { return {0.1, 0.7, 3.0}; }

  double duration() const noexcept { return 2.0 * phase_duration; }

  void validate() const {
    if (!(phase_duration > 0.0) || !std::isfinite(phase_duration) || !std::isfinite(start) ||
        !std::isfinite(end))
      throw ContractViolation("route needs finite setpoints and phase_duration > 0");
  }
};

struct SimConfig {
  double sample_rate = 50.0;  // Hz

  double dt() const noexcept { return 1.0 / sample_rate; }

  void validate() const {
    if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
      throw ContractViolation("sample_rate must be positive");
  }

  std::size_t samples_for(const RouteSpec& route) const {
    return static_cast<std::size_t>(std::llround(route.duration() * sample_rate));
  }

  /// Time of sample k; k / rate rather than k * dt so phase boundaries land exactly.
  double time_of(std::size_t k) const noexcept { return static_cast<double>(k) / sample_rate; }
};

struct TraceSample {
  double t = 0.0;
  double desired = 0.0;
  double actual = 0.0;

  friend bool operator==(const TraceSample&, const TraceSample&) = default;
};

using ChannelTrace = std::vector<TraceSample>;

struct SimTrace {
  ChannelTrace linear;
  ChannelTrace angular;

  const ChannelTrace& operator[](Channel c) const noexcept {
    return c == Channel::Linear ? linear : angular;
  }
  ChannelTrace& operator[](Channel c) noexcept { return c == Channel::Linear ? linear : angular; }
};

/// Setpoint at time t; the phase boundary belongs to the second phase.
inline double route_setpoint(const RouteSpec& route, double t) {
  if (!(t >= 0.0) || !(t < route.duration()))
    throw ContractViolation("time " + std::to_string(t) + " outside route [0, " +
                            std::to_string(route.duration()) + ")");
  return t < route.phase_duration ? route.start : route.end;
}

/// Saturates the command, then advances the lag by one exactly-discretized step.
inline double plant_step(double velocity, double command, const ChannelPlant& plant, double dt) {
  const double u = std::clamp(command, -plant.actuator_limit, plant.actuator_limit);
  const double target = u * plant.dc_gain;
  return target + (velocity - target) * std::exp(-dt / plant.time_constant);
}

/// Closed-loop run of one channel over the route. Each sample records the
/// measured velocity, then the controller acts and the plant advances.
inline ChannelTrace simulate_channel(const Gains& gains, const RouteSpec& route,
                                     const ChannelPlant& plant, const SimConfig& sim) {
  const std::size_t n = sim.samples_for(route);
  const double dt = sim.dt();
  ChannelTrace trace;
  trace.reserve(n);
  PidState pid = pid_reset();
  double v = plant.initial_velocity;
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(v)) throw DivergenceError(k);
    const double t = sim.time_of(k);
    const double desired = route_setpoint(route, t);
    trace.push_back({t, desired, v});
    const PidStep step = pid_step(pid, gains, desired, v, dt);
    pid = step.state;
    v = plant_step(v, step.output, plant, dt);
  }
  return trace;
}

/// Both channels from rest, uncoupled.
inline SimTrace simulate_route(const Individual& individual, const RouteSpec& route,
                               const PlantParams& params, const SimConfig& sim) {
  route.validate();
  params.validate();
  sim.validate();
  return {simulate_channel(individual.linear, route, params.linear, sim),
          simulate_channel(individual.angular, route, params.angular, sim)};
}

}  // namespace eptune
