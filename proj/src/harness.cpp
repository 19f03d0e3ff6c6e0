#include "apf/harness.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace apf {
namespace {

using nlohmann::json;

struct ScenarioEntry {
  ScenarioId id;
  std::string_view name;
  std::string_view description;
};

constexpr std::array<ScenarioEntry, 8> kScenarios{{
    {ScenarioId::FourPointGrid, "four_point_grid", "four point obstacles at (+-1, +-1), field-study layout"},
    {ScenarioId::NarrowingCorridor, "narrowing_corridor", "two walls converging towards the exit"},
    {ScenarioId::NarrowObstacles, "narrow_obstacles", "passage between two rows of circular obstacles"},
    {ScenarioId::TightGap, "tight_gap", "wall with a gap slightly wider than two danger distances"},
    {ScenarioId::CircleTrap, "circle_trap", "goal collinear behind a circular obstacle"},
    {ScenarioId::WallTrap, "wall_trap", "long wall between start and goal"},
    {ScenarioId::FourPointTrap, "four_point_trap", "goal beyond the four point obstacle square"},
    {ScenarioId::GnronGoal, "gnron_goal", "point obstacle near the goal"},
}};

json point(double x, double y) { return json::array({x, y}); }

json bounds(double x0, double y0, double x1, double y1) { return {{"min", point(x0, y0)}, {"max", point(x1, y1)}}; }

json point_obstacle(double x, double y) { return {{"type", "point"}, {"center", point(x, y)}}; }

json circle_obstacle(double x, double y, double r) {
  return {{"type", "circle"}, {"center", point(x, y)}, {"radius", r}};
}

json segment_obstacle(double ax, double ay, double bx, double by) {
  return {{"type", "segment"}, {"a", point(ax, ay)}, {"b", point(bx, by)}};
}

json exponential_field() { return {{"method", "exponential"}}; }

// Lookahead radius and bonus exceed the derived defaults (step length and half
// of it); at the defaults the wall trap stalls.
json sampler_on() { return {{"enabled", true}, {"radius", 0.1}, {"priority_bonus", 0.1}}; }

}  // namespace

std::span<const ScenarioId> all_scenarios() {
  static const std::array<ScenarioId, 8> ids = [] {
    std::array<ScenarioId, 8> out{};
    for (std::size_t i = 0; i < kScenarios.size(); ++i) out[i] = kScenarios[i].id;
    return out;
  }();
  return ids;
}

std::string_view to_string(ScenarioId id) {
  for (const auto& e : kScenarios)
    if (e.id == id) return e.name;
  return "unknown";
}

std::optional<ScenarioId> parse_scenario_id(std::string_view text) {
  for (const auto& e : kScenarios)
    if (e.name == text) return e.id;
  return std::nullopt;
}

std::string_view describe(ScenarioId id) {
  for (const auto& e : kScenarios)
    if (e.id == id) return e.description;
  return "";
}

// Layouts other than FourPointGrid are reconstructions; every coordinate
// below is frozen for kScenarioLibraryVersion.
json builtin_document(ScenarioId id) {
  json doc;
  doc["name"] = std::string(to_string(id));
  switch (id) {
    case ScenarioId::FourPointGrid:
      doc["bounds"] = bounds(-3, -3, 3, 3);
      doc["start"] = point(0, -2.5);
      doc["goal"] = point(0, 2.5);
      doc["obstacles"] = {point_obstacle(1, 1), point_obstacle(-1, -1), point_obstacle(-1, 1), point_obstacle(1, -1)};
      doc["field"] = exponential_field();
      doc["sampler"] = sampler_on();
      break;
    case ScenarioId::NarrowingCorridor:
      // Funnel from half-width 0.5 down to 0.18, then a straight channel.
      doc["bounds"] = bounds(-1, -2, 8, 2);
      doc["start"] = point(0.3, 0.1);
      doc["goal"] = point(7.3, 0);
      doc["obstacles"] = {segment_obstacle(0, 0.5, 3, 0.18), segment_obstacle(3, 0.18, 7, 0.18),
                          segment_obstacle(0, -0.5, 3, -0.18), segment_obstacle(3, -0.18, 7, -0.18)};
      doc["field"] = {{"method", "exponential"}, {"attractive_gain", 2.0}, {"amplitude", 1.0}, {"sharpness", 36.0}};
      doc["planner"] = {{"robot_radius", 0.1}};
      break;
    case ScenarioId::NarrowObstacles:
      doc["bounds"] = bounds(-4, -3, 6, 3);
      doc["start"] = point(-3, 0.2);
      doc["goal"] = point(5, 0);
      doc["obstacles"] = {circle_obstacle(0, 1.0, 0.3),   circle_obstacle(0, -1.0, 0.3),
                          circle_obstacle(1.5, 0.9, 0.3), circle_obstacle(1.5, -0.9, 0.3),
                          circle_obstacle(3, 1.0, 0.3),   circle_obstacle(3, -1.0, 0.3)};
      doc["field"] = exponential_field();
      doc["sampler"] = sampler_on();
      break;
    case ScenarioId::TightGap:
      doc["bounds"] = bounds(-4, -4, 4, 4);
      doc["start"] = point(-2.5, 1.5);
      doc["goal"] = point(2.5, -1.0);
      doc["obstacles"] = {segment_obstacle(0, -4, 0, -0.6), segment_obstacle(0, 0.6, 0, 4)};
      doc["field"] = exponential_field();
      doc["sampler"] = sampler_on();
      break;
    case ScenarioId::CircleTrap:
      doc["bounds"] = bounds(-4, -3, 4, 3);
      doc["start"] = point(-3, 0);
      doc["goal"] = point(2, 0);
      doc["obstacles"] = {circle_obstacle(0, 0, 0.5)};
      doc["field"] = exponential_field();
      doc["sampler"] = sampler_on();
      break;
    case ScenarioId::WallTrap:
      doc["bounds"] = bounds(-4, -3, 4, 3);
      doc["start"] = point(-3, 0);
      doc["goal"] = point(2, 0);
      doc["obstacles"] = {segment_obstacle(0, -1.5, 0, 1.5)};
      doc["field"] = exponential_field();
      doc["sampler"] = sampler_on();
      break;
    case ScenarioId::FourPointTrap:
      doc["bounds"] = bounds(-3, -3, 3, 3);
      doc["start"] = point(-2.5, 0);
      doc["goal"] = point(2.5, 0);
      doc["obstacles"] = {point_obstacle(1, 1), point_obstacle(-1, -1), point_obstacle(-1, 1), point_obstacle(1, -1)};
      doc["field"] = exponential_field();
      doc["sampler"] = sampler_on();
      break;
    case ScenarioId::GnronGoal:
      doc["bounds"] = bounds(-3, -3, 3, 3);
      doc["start"] = point(-2.5, 0.5);
      doc["goal"] = point(0, 0);
      doc["obstacles"] = {point_obstacle(0.75, 0)};
      doc["field"] = {{"method", "exponential"}, {"attractive_gain", 0.5}, {"amplitude", 2.0}, {"sharpness", 4.0}};
      doc["sampler"] = sampler_on();
      break;
  }
  return doc;
}

Scenario builtin_scenario(ScenarioId id) { return load_scenario(builtin_document(id)); }

PathMetrics metrics(const Trajectory& t) {
  PathMetrics m;
  const auto& s = t.steps;
  m.steps = s.empty() ? 0 : s.size() - 1;
  m.path_length = t.path_length();
  m.min_clearance = std::numeric_limits<double>::infinity();
  for (const StepRecord& r : s) m.min_clearance = std::min(m.min_clearance, r.clearance);
  if (s.size() >= 3) {
    double total = 0.0;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
      const double turn = angle_between(s[i].position - s[i - 1].position, s[i + 1].position - s[i].position);
      m.max_heading_change = std::max(m.max_heading_change, turn);
      total += turn;
    }
    m.mean_heading_change = total / static_cast<double>(s.size() - 2);
  }
  if (m.path_length > 0.0) {
    const double net = distance(s.front().position, s.back().position);
    m.oscillation_index = std::clamp(1.0 - net / m.path_length, 0.0, 1.0);
  }
  return m;
}

std::vector<MethodSetting> baseline_settings() {
  return {
      {"exponential+sampler", FieldSpec{0.5, ExponentialGaussian{}, Aggregation::Superposition}, true},
      {"exponential", FieldSpec{0.5, ExponentialGaussian{}, Aggregation::Superposition}, false},
      {"inverse", FieldSpec{0.5, InverseDistance{}, Aggregation::Superposition}, false},
      {"log", FieldSpec{0.5, LogDistance{}, Aggregation::Superposition}, false},
  };
}

std::optional<MethodSetting> parse_method_setting(std::string_view text) {
  constexpr std::string_view suffix = "+sampler";
  const bool sampler = text.size() > suffix.size() && text.substr(text.size() - suffix.size()) == suffix;
  const std::string_view method = sampler ? text.substr(0, text.size() - suffix.size()) : text;
  MethodSetting s;
  s.label = std::string(text);
  s.sampler = sampler;
  if (method == "exponential")
    s.field.repulsive = ExponentialGaussian{};
  else if (method == "inverse")
    s.field.repulsive = InverseDistance{};
  else if (method == "log")
    s.field.repulsive = LogDistance{};
  else
    return std::nullopt;
  return s;
}

const AblationCell* AblationReport::find(ScenarioId id, std::string_view method_label) const {
  for (const AblationCell& c : cells)
    if (c.scenario == id && c.method.label == method_label) return &c;
  return nullptr;
}

nlohmann::json cell_document(ScenarioId id, const MethodSetting& method) {
  json doc = builtin_document(id);
  doc["field"] = json::parse(to_json(method.field).dump());
  if (!doc.contains("sampler")) doc["sampler"] = json::object();
  doc["sampler"]["enabled"] = method.sampler;
  return doc;
}

AblationReport run_ablation(std::span<const ScenarioId> scenarios, std::span<const MethodSetting> methods) {
  AblationReport report;
  report.cells.reserve(scenarios.size() * methods.size());
  for (const ScenarioId id : scenarios) {
    for (const MethodSetting& m : methods) {
      AblationCell cell;
      cell.scenario = id;
      cell.method = m;
      try {
        const Scenario s = load_scenario(cell_document(id, m));
        const Trajectory t = plan(s.world, s.field, s.planner, s.sampler);
        cell.outcome = t.outcome;
        cell.metrics = metrics(t);
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

nlohmann::ordered_json to_json(const PathMetrics& m) {
  nlohmann::ordered_json j;
  j["path_length"] = m.path_length;
  j["max_heading_change"] = m.max_heading_change;
  j["mean_heading_change"] = m.mean_heading_change;
  j["oscillation_index"] = m.oscillation_index;
  // JSON has no infinity; an obstacle-free run reports null.
  if (std::isfinite(m.min_clearance))
    j["min_clearance"] = m.min_clearance;
  else
    j["min_clearance"] = nullptr;
  j["steps"] = m.steps;
  return j;
}

nlohmann::ordered_json to_json(const AblationReport& r) {
  nlohmann::ordered_json j;
  j["scenario_library_version"] = kScenarioLibraryVersion;
  j["cells"] = nlohmann::ordered_json::array();
  for (const AblationCell& c : r.cells) {
    nlohmann::ordered_json cj;
    cj["scenario"] = std::string(to_string(c.scenario));
    cj["method"] = c.method.label;
    cj["sampler"] = c.method.sampler;
    if (c.outcome)
      cj["outcome"] = std::string(to_string(*c.outcome));
    else
      cj["outcome"] = nullptr;
    cj["metrics"] = to_json(c.metrics);
    cj["parameters"] = to_json(c.method.field);
    if (!c.error.empty()) cj["error"] = c.error;
    j["cells"].push_back(cj);
  }
  return j;
}

}  // namespace apf
