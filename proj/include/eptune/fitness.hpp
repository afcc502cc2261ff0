#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>

#include "eptune/ep.hpp"
#include "eptune/errors.hpp"
#include "eptune/plant.hpp"

namespace eptune {

/// AE assigned to a channel whose simulation diverged.
inline constexpr double kWorstCaseAe = 1e6;

/// Running mean of |desired - actual|.
class AverageErrorAccumulator {
 public:
  void add(double desired, double actual) noexcept {
    sum_ += std::fabs(desired - actual);
    ++count_;
  }

  std::size_t count() const noexcept { return count_; }

  double value() const {
    if (count_ == 0) throw ContractViolation("average error of an empty trace");
    return sum_ / static_cast<double>(count_);
  }

 private:
  double sum_ = 0.0;
  std::size_t count_ = 0;
};

/// Mean absolute tracking error over every sample of the trace, transient included.
inline double average_error(std::span<const TraceSample> trace) {
  AverageErrorAccumulator acc;
  for (const TraceSample& s : trace) acc.add(s.desired, s.actual);
  return acc.value();
}

/// Runs the route once and scores each channel. A diverged channel scores
/// `worst_case_ae` instead of failing.
inline FitnessRecord fitness_of(const Individual& individual, const RouteSpec& route,
                                const PlantParams& params, const SimConfig& sim,
                                double worst_case_ae = kWorstCaseAe) {
  route.validate();
  params.validate();
  sim.validate();
  const auto score = [&](Channel c) {
    try {
      return average_error(simulate_channel(individual[c], route, params[c], sim));
    } catch (const DivergenceError&) {
      return worst_case_ae;
    }
  };
  return {score(Channel::Linear), score(Channel::Angular)};
}

struct StepMetrics {
  /// 10% to 90% rise time in seconds; empty when 90% is never reached.
  std::optional<double> rise_time;
  /// Peak excursion beyond `end`, as a fraction of |end - start|.
  double overshoot = 0.0;
  /// end - mean(actual) over the final half second.
  double steady_state_error = 0.0;
};

inline constexpr double kSteadyStateWindow = 0.5;  // seconds

namespace detail {

// Time at which the normalized response first reaches `level`, linearly
// interpolated between samples. Only samples of the second phase are used.
inline std::optional<double> first_crossing(std::span<const TraceSample> phase, double start,
                                            double span, double level) {
  const auto progress = [&](const TraceSample& s) { return (s.actual - start) / span; };
  for (std::size_t i = 0; i < phase.size(); ++i) {
    const double y = progress(phase[i]);
    if (y < level) continue;
    if (i == 0) return phase[0].t;
    const double y0 = progress(phase[i - 1]);
    const double frac = (level - y0) / (y - y0);
    return phase[i - 1].t + frac * (phase[i].t - phase[i - 1].t);
  }
  return std::nullopt;
}

}  // namespace detail

/// Rise time, overshoot and steady-state error of the start->end step.
inline StepMetrics step_metrics(std::span<const TraceSample> trace, const RouteSpec& route) {
  const double span = route.end - route.start;
  if (span == 0.0) throw UndefinedStepError("route start equals end; no step to measure");

  std::size_t first = 0;
  while (first < trace.size() && trace[first].t < route.phase_duration) ++first;
  const auto phase = trace.subspan(first);
  if (phase.empty()) throw ContractViolation("trace does not reach the second route phase");

  StepMetrics m;
  const auto t10 = detail::first_crossing(phase, route.start, span, 0.1);
  const auto t90 = detail::first_crossing(phase, route.start, span, 0.9);
  if (t10 && t90) m.rise_time = *t90 - *t10;

  double peak = 0.0;
  for (const TraceSample& s : phase) peak = std::max(peak, (s.actual - route.end) / span);
  m.overshoot = peak;

  // Window is [duration - 0.5 s, duration); the slack keeps the edge sample
  // despite rounding in the sample times.
  const double window_start = route.duration() - kSteadyStateWindow - 1e-9;
  double sum = 0.0;
  std::size_t n = 0;
  for (const TraceSample& s : phase) {
    if (s.t < window_start) continue;
    sum += s.actual;
    ++n;
  }
  if (n == 0) {
    sum = phase.back().actual;
    n = 1;
  }
  m.steady_state_error = route.end - sum / static_cast<double>(n);
  return m;
}

}  // namespace eptune
