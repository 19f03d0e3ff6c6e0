#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "apf/config.hpp"
#include "apf/fields.hpp"
#include "apf/world.hpp"

namespace apf {

enum class PlanOutcome {
  ReachedGoal,
  LocalMinimumStall,
  MaxStepsExceeded,
  DangerViolation,
  AllCandidatesInfeasible,
  Singularity,
};

std::string_view to_string(PlanOutcome outcome);

struct StepRecord {
  std::size_t index = 0;
  Point2 position;
  double potential = 0.0;
  Vec2 gradient;
  /// +infinity in an obstacle-free world.
  double clearance = 0.0;
  bool sampler_used = false;
  std::optional<std::size_t> selected_candidate;
  std::optional<double> score;
};

struct Trajectory {
  std::vector<StepRecord> steps;
  PlanOutcome outcome = PlanOutcome::MaxStepsExceeded;

  double path_length() const;
};

/// One descent step from p. Returns p unchanged when |grad| < gradient_floor.
/// Throws SingularityError from the field evaluation.
Point2 raw_step(const Point2& p, const World& w, const FieldSpec& spec, const PlannerConfig& cfg);

/// True iff the first and last positions of `window` are closer than
/// stall_displacement. The window covers stall_window steps, i.e.
/// stall_window + 1 records; shorter windows never stall.
bool detect_stall(std::span<const StepRecord> window, const PlannerConfig& cfg);

/// Runs descent from w.start() until one terminal outcome. When `sampler` is
/// given and enabled, every raw next point is replaced by the sampler's
/// selection. Throws std::invalid_argument when the start clearance is not
/// above robot_radius or a config is invalid.
Trajectory plan(const World& w, const FieldSpec& spec, const PlannerConfig& cfg,
                const std::optional<SamplerConfig>& sampler = std::nullopt);

/// Header `step,x,y,potential,grad_x,grad_y,clearance,sampler_used,candidate,score`,
/// one row per step, then a `# summary {...}` JSON line.
void write_trajectory_csv(std::ostream& out, const Trajectory& t);

}  // namespace apf
