#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "apf/fields.hpp"
#include "apf/planner.hpp"
#include "apf/scenario.hpp"

namespace apf {

enum class ScenarioId {
  FourPointGrid,
  NarrowingCorridor,
  NarrowObstacles,
  TightGap,
  CircleTrap,
  WallTrap,
  FourPointTrap,
  GnronGoal,
};

/// Bumped whenever a built-in layout or its default parameters change.
inline constexpr int kScenarioLibraryVersion = 1;

std::span<const ScenarioId> all_scenarios();
std::string_view to_string(ScenarioId id);
std::optional<ScenarioId> parse_scenario_id(std::string_view text);
std::string_view describe(ScenarioId id);

/// The authored document: defaults left implicit so that method overrides
/// re-derive dependent values (e.g. the sampler danger distance).
nlohmann::json builtin_document(ScenarioId id);
Scenario builtin_scenario(ScenarioId id);

struct PathMetrics {
  double path_length = 0.0;
  double max_heading_change = 0.0;
  double mean_heading_change = 0.0;
  double oscillation_index = 0.0;
  double min_clearance = 0.0;
  std::size_t steps = 0;
};

PathMetrics metrics(const Trajectory& t);

struct MethodSetting {
  std::string label;
  FieldSpec field;
  bool sampler = false;
};

/// exponential+sampler, exponential, inverse, log; default parameters.
std::vector<MethodSetting> baseline_settings();

/// Parses "exponential+sampler", "inverse", ... into a default-parameter setting.
std::optional<MethodSetting> parse_method_setting(std::string_view text);

struct AblationCell {
  ScenarioId scenario = ScenarioId::FourPointGrid;
  MethodSetting method;
  std::optional<PlanOutcome> outcome;
  PathMetrics metrics;
  /// Set when the cell could not be planned (invalid configuration).
  std::string error;
};

struct AblationReport {
  std::vector<AblationCell> cells;

  const AblationCell* find(ScenarioId id, std::string_view method_label) const;
};

/// Document for one ablation cell: the scenario's authored document with the
/// method's field and sampler flag substituted.
nlohmann::json cell_document(ScenarioId id, const MethodSetting& method);

/// Plans every (scenario, method) pair; rows follow the scenario order,
/// columns the method order. A failing cell never aborts the matrix.
AblationReport run_ablation(std::span<const ScenarioId> scenarios, std::span<const MethodSetting> methods);

nlohmann::ordered_json to_json(const PathMetrics& m);
nlohmann::ordered_json to_json(const AblationReport& r);

}  // namespace apf
