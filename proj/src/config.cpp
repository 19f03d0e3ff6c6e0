#include "apf/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace apf {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void validate(const PlannerConfig& cfg, const Bounds& bounds) {
  require(positive(cfg.step_length), "step_length must be positive");
  require(cfg.step_length < bounds.diagonal(), "step_length must be shorter than the bounds diagonal");
  require(positive(cfg.goal_tolerance), "goal_tolerance must be positive");
  require(cfg.max_steps > 0, "max_steps must be positive");
  require(std::isfinite(cfg.robot_radius) && cfg.robot_radius >= 0.0, "robot_radius must be non-negative");
  require(cfg.stall_window >= 2, "stall_window must be at least 2");
  require(std::isfinite(cfg.stall_displacement) && cfg.stall_displacement >= 0.0,
          "stall_displacement must be non-negative");
  require(std::isfinite(cfg.gradient_floor) && cfg.gradient_floor >= 0.0, "gradient_floor must be non-negative");
  require(positive(cfg.descent_rate), "descent_rate must be positive");
}

SamplerConfig resolve(const SamplerConfig& cfg, const FieldSpec& field, const PlannerConfig& planner) {
  SamplerConfig out = cfg;
  if (!out.radius) out.radius = planner.step_length;
  if (!out.priority_bonus) out.priority_bonus = *out.radius / 2.0;
  if (!out.danger_distance) out.danger_distance = danger_distance(field.repulsive);
  if (!out.danger_distance) {
    require(!out.enabled, "danger_distance must be given explicitly for the " + method_name(field.repulsive) +
                              " field");
    return out;
  }
  if (!out.distance_threshold) out.distance_threshold = 2.0 * *out.danger_distance;

  if (out.enabled) {
    require(out.num_samples >= 3, "num_samples must be at least 3");
    require(positive(*out.radius), "radius must be positive");
    require(positive(*out.danger_distance), "danger_distance must be positive");
    require(*out.danger_distance >= planner.robot_radius, "danger_distance must be at least robot_radius");
    require(std::isfinite(*out.priority_bonus) && *out.priority_bonus >= 0.0, "priority_bonus must be non-negative");
    require(std::isfinite(out.theta_threshold), "theta_threshold must be finite");
    require(std::isfinite(*out.distance_threshold), "distance_threshold must be finite");
  }
  return out;
}

}  // namespace apf
