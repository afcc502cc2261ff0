#pragma once

#include <cmath>
#include <random>

#include "eptune/errors.hpp"
#include "eptune/gains.hpp"

namespace eptune {

enum class MutationKind {
  Absolute,  ///< add ~ N(0, sigma_absolute)
  Scaled,    ///< add ~ value * N(0, sigma_scaled)
};

struct MutationSpec {
  MutationKind kind = MutationKind::Scaled;
  double sigma_absolute = 0.05;
  double sigma_scaled = 0.5;

  void validate() const {
    if (!(sigma_absolute > 0.0) || !(sigma_scaled > 0.0))
      throw ContractViolation("mutation sigmas must be positive");
  }

  double sigma() const noexcept {
    return kind == MutationKind::Absolute ? sigma_absolute : sigma_scaled;
  }
};

/// Applies a drawn perturbation to a nonnegative value, halving the perturbation
/// until the sum is nonnegative. Returns value + add * 2^-m for the smallest m >= 0
/// that makes it nonnegative. When value is 0 and add is negative no finite m
/// exists and the limit, 0, is returned.
inline double apply_nonnegative(double value, double add) noexcept {
  if (value + add >= 0.0) return value + add;
  if (value <= 0.0) return 0.0;
  while (value + add < 0.0) add *= 0.5;
  return value + add;
}

template <class Rng>
double mutate_absolute(double value, double sigma, Rng& rng) {
  std::normal_distribution<double> noise(0.0, sigma);
  return apply_nonnegative(value, noise(rng));
}

template <class Rng>
double mutate_scaled(double value, double sigma, Rng& rng) {
  std::normal_distribution<double> noise(0.0, sigma);
  const double draw = noise(rng);
  // The draw is consumed even for value 0 so the stream position does not
  // depend on the parameter values.
  return apply_nonnegative(value, value * draw);
}

template <class Rng>
double mutate_value(double value, const MutationSpec& spec, Rng& rng) {
  return spec.kind == MutationKind::Absolute ? mutate_absolute(value, spec.sigma_absolute, rng)
                                             : mutate_scaled(value, spec.sigma_scaled, rng);
}

/// Mutates all six gains independently, one draw each, in the order
/// kpv, kiv, kdv, kpa, kia, kda.
template <class Rng>
Individual mutate_individual(const Individual& parent, const MutationSpec& spec, Rng& rng) {
  auto values = parent.to_array();
  for (double& v : values) v = mutate_value(v, spec, rng);
  return Individual::from_array(values);
}

}  // namespace eptune
