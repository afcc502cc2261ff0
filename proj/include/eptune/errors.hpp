#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eptune {

/// A caller broke a documented precondition (empty trace, time outside a route, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fitness could not be established for a population (every AE non-finite, or
/// the evaluator threw). Carries the generation/member when known.
class EvaluationFailure : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit EvaluationFailure(const std::string& what, std::size_t generation = npos,
                             std::size_t member = npos)
      : std::runtime_error(what), generation_(generation), member_(member) {}

  std::size_t generation() const noexcept { return generation_; }
  std::size_t member() const noexcept { return member_; }

 private:
  std::size_t generation_;
  std::size_t member_;
};

/// The simulated velocity became non-finite.
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(std::size_t sample)
      : std::runtime_error("simulation diverged at sample " + std::to_string(sample)),
        sample_(sample) {}

  std::size_t sample() const noexcept { return sample_; }

 private:
  std::size_t sample_;
};

/// Step metrics requested for a route whose start equals its end.
class UndefinedStepError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eptune
