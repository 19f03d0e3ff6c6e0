#pragma once

#include <cstddef>
#include <numbers>
#include <optional>

#include "apf/fields.hpp"
#include "apf/world.hpp"

namespace apf {

enum class StepRule {
  /// p - step_length * grad / |grad|
  FixedArcLength,
  /// p - descent_rate * grad; exposes the raw force magnitude.
  RawMagnitude,
};

struct PlannerConfig {
  double step_length = 0.05;
  double goal_tolerance = 0.1;
  std::size_t max_steps = 5000;
  double robot_radius = 0.05;
  std::size_t stall_window = 40;
  double stall_displacement = 0.02;
  double gradient_floor = 1e-9;
  StepRule step_rule = StepRule::FixedArcLength;
  double descent_rate = 0.01;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const PlannerConfig& cfg, const Bounds& bounds);

/// Circular sampling parameters. Unset optionals take their defaults from
/// resolve(): radius = step_length, priority_bonus = radius / 2,
/// danger_distance = the field's danger distance,
/// distance_threshold = 2 * danger_distance.
struct SamplerConfig {
  bool enabled = false;
  std::size_t num_samples = 16;
  std::optional<double> radius;
  std::optional<double> danger_distance;
  std::optional<double> priority_bonus;
  double theta_threshold = std::numbers::pi / 2.0;
  std::optional<double> distance_threshold;

  bool resolved() const { return radius && danger_distance && priority_bonus && distance_threshold; }
};

/// Fills every unset optional. Throws std::invalid_argument when the danger
/// distance cannot be derived (non-exponential field without an explicit
/// value) or a resolved value violates an invariant. Disabled configs with an
/// underivable danger distance are returned partially resolved.
SamplerConfig resolve(const SamplerConfig& cfg, const FieldSpec& field, const PlannerConfig& planner);

}  // namespace apf
