#pragma once

#include "eptune/gains.hpp"

namespace eptune {

/// Positional PID memory: rectangular integral of the error and the previous error.
struct PidState {
  double integral = 0.0;  // error * seconds
  double previous_error = 0.0;
  bool first_sample_seen = false;

  friend bool operator==(const PidState&, const PidState&) = default;
};

struct PidStep {
  double output = 0.0;
  PidState state;
};

/// One controller update. Derivative acts on the error (backward difference) and
/// contributes nothing on the first sample after a reset. The output is not clamped.
constexpr PidStep pid_step(const PidState& state, const Gains& gains, double setpoint,
                           double measurement, double dt) noexcept {
  const double error = setpoint - measurement;
  PidState next = state;
  next.integral += error * dt;
  const double derivative = state.first_sample_seen ? (error - state.previous_error) / dt : 0.0;
  next.previous_error = error;
  next.first_sample_seen = true;
  return {gains.kp * error + gains.ki * next.integral + gains.kd * derivative, next};
}

constexpr PidState pid_reset(const PidState& = {}) noexcept { return PidState{}; }

}  // namespace eptune
