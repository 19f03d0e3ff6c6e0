#include "apf/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "apf/format.hpp"
#include "apf/harness.hpp"
#include "apf/planner.hpp"
#include "apf/scenario.hpp"
#include "apf/svg.hpp"

namespace apf::cli {
namespace {

using nlohmann::json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FieldOverrides {
  std::optional<std::string> method;
  std::optional<double> gain;
  std::optional<double> eta;
  std::optional<double> c;
  std::optional<double> amplitude;
  std::optional<double> sharpness;
  std::optional<std::string> aggregation;
};

struct PlannerOverrides {
  std::optional<std::string> sampler;
  std::optional<double> step_length;
  std::optional<double> goal_tolerance;
  std::optional<std::size_t> max_steps;
  std::optional<double> robot_radius;
  std::optional<std::string> step_rule;
  std::optional<double> descent_rate;
  std::optional<std::size_t> num_samples;
  std::optional<double> sampler_radius;
  std::optional<double> danger_distance;
  std::optional<double> priority_bonus;
};

void add_field_options(CLI::App* cmd, FieldOverrides& o) {
  cmd->add_option("--method", o.method, "Repulsive family")->check(CLI::IsMember({"inverse", "log", "exponential"}));
  cmd->add_option("--gain", o.gain, "Attractive gain");
  cmd->add_option("--eta", o.eta, "Inverse-distance strength");
  cmd->add_option("--c", o.c, "Logarithmic strength");
  cmd->add_option("--amplitude", o.amplitude, "Exponential amplitude");
  cmd->add_option("--k,--sharpness", o.sharpness, "Exponential sharpness");
  cmd->add_option("--aggregation", o.aggregation)->check(CLI::IsMember({"superposition", "nearest"}));
}

void add_planner_options(CLI::App* cmd, PlannerOverrides& o) {
  cmd->add_option("--sampler", o.sampler, "Circular sampling")->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--step-length", o.step_length);
  cmd->add_option("--goal-tolerance", o.goal_tolerance);
  cmd->add_option("--max-steps", o.max_steps);
  cmd->add_option("--robot-radius", o.robot_radius);
  cmd->add_option("--step-rule", o.step_rule)->check(CLI::IsMember({"fixed", "raw_magnitude"}));
  cmd->add_option("--descent-rate", o.descent_rate);
  cmd->add_option("--samples", o.num_samples);
  cmd->add_option("--sampler-radius", o.sampler_radius);
  cmd->add_option("--danger-distance", o.danger_distance);
  cmd->add_option("--priority-bonus", o.priority_bonus);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json scenario_document(const std::string& source) {
  if (const auto id = parse_scenario_id(source)) return builtin_document(*id);
  if (!std::filesystem::exists(source))
    throw InputError("'" + source + "' is neither a built-in scenario nor a readable file");
  try {
    return json::parse(read_file(source));
  } catch (const json::parse_error& e) {
    throw ScenarioError("", std::string("parse error: ") + e.what());
  }
}

template <class T>
void set_if(json& obj, const char* key, const std::optional<T>& v) {
  if (v) obj[key] = *v;
}

void apply(json& doc, const FieldOverrides& o) {
  json& f = doc["field"];
  if (f.is_null()) f = json::object();
  if (o.method && f.value("method", std::string("exponential")) != *o.method) {
    for (const char* key : {"eta", "c", "amplitude", "sharpness"}) f.erase(key);
    f["method"] = *o.method;
  }
  set_if(f, "attractive_gain", o.gain);
  set_if(f, "eta", o.eta);
  set_if(f, "c", o.c);
  set_if(f, "amplitude", o.amplitude);
  set_if(f, "sharpness", o.sharpness);
  set_if(f, "aggregation", o.aggregation);
}

void apply(json& doc, const PlannerOverrides& o) {
  json& p = doc["planner"];
  if (p.is_null()) p = json::object();
  set_if(p, "step_length", o.step_length);
  set_if(p, "goal_tolerance", o.goal_tolerance);
  set_if(p, "max_steps", o.max_steps);
  set_if(p, "robot_radius", o.robot_radius);
  set_if(p, "step_rule", o.step_rule);
  set_if(p, "descent_rate", o.descent_rate);
  json& s = doc["sampler"];
  if (s.is_null()) s = json::object();
  if (o.sampler) s["enabled"] = *o.sampler == "on";
  set_if(s, "num_samples", o.num_samples);
  set_if(s, "radius", o.sampler_radius);
  set_if(s, "danger_distance", o.danger_distance);
  set_if(s, "priority_bonus", o.priority_bonus);
}

// Writes to a sibling temporary and renames it into place.
void write_atomically(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("failed while writing '" + path + "'");
  }
  std::filesystem::rename(tmp, target);
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

std::string sampler_echo(const Scenario& s) {
  if (!s.sampler.enabled) return "off";
  return "on(n=" + std::to_string(s.sampler.num_samples) + ",radius=" + format_number(*s.sampler.radius) +
         ",danger=" + format_number(*s.sampler.danger_distance) + ",bonus=" + format_number(*s.sampler.priority_bonus) +
         ")";
}

int run_plan(const std::string& source, const FieldOverrides& fo, const PlannerOverrides& po,
             const std::string& out_path, const std::string& svg_path, const std::string& scenario_out,
             std::ostream& out) {
  json doc = scenario_document(source);
  apply(doc, fo);
  apply(doc, po);
  const Scenario s = load_scenario(doc);
  const Trajectory t = plan(s.world, s.field, s.planner, s.sampler);

  if (!out_path.empty()) {
    std::ostringstream csv;
    write_trajectory_csv(csv, t);
    write_atomically(out_path, csv.str());
  }
  if (!svg_path.empty()) {
    SvgOptions opts;
    opts.danger_distance = s.sampler.danger_distance;
    opts.title = (s.name.empty() ? source : s.name) + " / " + method_name(s.field.repulsive);
    write_atomically(svg_path, render_svg(t, s.world, opts));
  }
  if (!scenario_out.empty()) write_atomically(scenario_out, save_scenario(s));

  out << "plan " << (s.name.empty() ? source : s.name) << ": outcome=" << to_string(t.outcome)
      << " steps=" << t.steps.size() - 1 << " path_length=" << format_number(t.path_length())
      << " field=" << to_json(s.field).dump() << " sampler=" << sampler_echo(s) << '\n';
  return t.outcome == PlanOutcome::ReachedGoal ? kSuccess : kGoalNotReached;
}

int run_field(const std::string& source, const FieldOverrides& fo, std::size_t resolution, const std::string& out_path,
              std::ostream& out) {
  json doc = scenario_document(source);
  apply(doc, fo);
  // The field does not depend on sampling; a sampler the chosen method
  // cannot support must not block the export.
  doc.erase("sampler");
  const Scenario s = load_scenario(doc);
  if (resolution < 2) throw InputError("--grid must be at least 2");
  const auto cells = field_grid(s.world, s.field, resolution);
  std::size_t singular = 0;
  for (const auto& c : cells) singular += c.singular ? 1 : 0;
  if (!out_path.empty()) {
    std::ostringstream csv;
    write_field_csv(csv, cells);
    write_atomically(out_path, csv.str());
  }
  out << "field " << (s.name.empty() ? source : s.name) << ": rows=" << cells.size() << " singular=" << singular
      << " field=" << to_json(s.field).dump() << '\n';
  return kSuccess;
}

int run_compare(const std::string& scenario_list, const std::string& method_list, const std::string& out_path,
                std::ostream& out) {
  std::vector<ScenarioId> scenarios;
  if (scenario_list.empty()) {
    scenarios = {ScenarioId::NarrowObstacles, ScenarioId::TightGap, ScenarioId::CircleTrap, ScenarioId::WallTrap};
  } else {
    for (const std::string& name : split(scenario_list)) {
      const auto id = parse_scenario_id(name);
      if (!id) throw InputError("unknown scenario '" + name + "'");
      scenarios.push_back(*id);
    }
  }
  std::vector<MethodSetting> methods;
  if (method_list.empty()) {
    methods = baseline_settings();
  } else {
    for (const std::string& name : split(method_list)) {
      const auto m = parse_method_setting(name);
      if (!m) throw InputError("unknown method '" + name + "'");
      methods.push_back(*m);
    }
  }
  if (scenarios.empty() || methods.empty()) throw InputError("compare needs at least one scenario and one method");

  const AblationReport report = run_ablation(scenarios, methods);
  if (!out_path.empty()) write_atomically(out_path, to_json(report).dump(2) + "\n");
  std::size_t reached = 0;
  for (const auto& c : report.cells) reached += c.outcome == PlanOutcome::ReachedGoal ? 1 : 0;
  out << "compare: cells=" << report.cells.size() << " reached_goal=" << reached << '\n';
  return kSuccess;
}

int run_scenarios(const std::string& show, std::ostream& out) {
  if (!show.empty()) {
    const auto id = parse_scenario_id(show);
    if (!id) throw InputError("unknown scenario '" + show + "'");
    out << builtin_document(*id).dump(2) << '\n';
    return kSuccess;
  }
  for (const ScenarioId id : all_scenarios()) out << to_string(id) << "\t" << describe(id) << '\n';
  return kSuccess;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Artificial potential field planner with circular sampling"};
  app.require_subcommand(1, 1);

  std::string scenario, out_path, svg_path, scenario_out, scenario_list, method_list, show;
  std::size_t grid = 101;
  FieldOverrides fo;
  PlannerOverrides po;

  auto* plan_cmd = app.add_subcommand("plan", "Plan a trajectory on one scenario");
  plan_cmd->add_option("--scenario", scenario, "Built-in id or scenario file")->required();
  plan_cmd->add_option("--out", out_path, "Trajectory CSV");
  plan_cmd->add_option("--svg", svg_path, "Trajectory figure");
  plan_cmd->add_option("--save-scenario", scenario_out, "Effective scenario document");
  add_field_options(plan_cmd, fo);
  add_planner_options(plan_cmd, po);

  auto* field_cmd = app.add_subcommand("field", "Export the potential field on a grid");
  field_cmd->add_option("--scenario", scenario, "Built-in id or scenario file")->required();
  field_cmd->add_option("--grid", grid, "Cells per axis");
  field_cmd->add_option("--out", out_path, "Field CSV");
  add_field_options(field_cmd, fo);

  auto* compare_cmd = app.add_subcommand("compare", "Run the method x scenario ablation matrix");
  compare_cmd->add_option("--scenarios", scenario_list, "Comma-separated scenario ids");
  compare_cmd->add_option("--methods", method_list, "Comma-separated methods, e.g. exponential+sampler,inverse");
  compare_cmd->add_option("--out", out_path, "Report JSON");

  auto* scenarios_cmd = app.add_subcommand("scenarios", "List built-in scenarios");
  scenarios_cmd->add_option("--show", show, "Print one scenario document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    if (*plan_cmd) return run_plan(scenario, fo, po, out_path, svg_path, scenario_out, out);
    if (*field_cmd) return run_field(scenario, fo, grid, out_path, out);
    if (*compare_cmd) return run_compare(scenario_list, method_list, out_path, out);
    if (*scenarios_cmd) return run_scenarios(show, out);
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> storage{"apf"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace apf::cli
