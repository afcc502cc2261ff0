#pragma once

#include <array>
#include <cmath>

namespace eptune {

/// Gains of one PID loop. kp is dimensionless, ki in 1/s, kd in s.
struct Gains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;

  bool valid() const noexcept {
    return std::isfinite(kp) && std::isfinite(ki) && std::isfinite(kd) && kp >= 0.0 &&
           ki >= 0.0 && kd >= 0.0;
  }

  friend bool operator==(const Gains&, const Gains&) = default;
};

enum class Channel { Linear, Angular };

inline constexpr std::array<Channel, 2> kChannels{Channel::Linear, Channel::Angular};

constexpr const char* channel_name(Channel c) noexcept {
  return c == Channel::Linear ? "Linear" : "Angular";
}

/// One candidate: the linear-velocity PID and the angular-velocity PID, tuned together.
struct Individual {
  Gains linear;
  Gains angular;

  bool valid() const noexcept { return linear.valid() && angular.valid(); }

  const Gains& operator[](Channel c) const noexcept {
    return c == Channel::Linear ? linear : angular;
  }
  Gains& operator[](Channel c) noexcept { return c == Channel::Linear ? linear : angular; }

  /// Flattened in the canonical order kpv, kiv, kdv, kpa, kia, kda.
  std::array<double, 6> to_array() const noexcept {
    return {linear.kp, linear.ki, linear.kd, angular.kp, angular.ki, angular.kd};
  }

  static Individual from_array(const std::array<double, 6>& v) noexcept {
    return {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
  }

  friend bool operator==(const Individual&, const Individual&) = default;
};

}  // namespace eptune
