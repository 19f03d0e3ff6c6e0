#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "apf/config.hpp"
#include "apf/fields.hpp"
#include "apf/world.hpp"

namespace apf {

struct Scenario {
  std::string name;
  World world;
  FieldSpec field;
  PlannerConfig planner;
  SamplerConfig sampler;
};

/// Parse, schema or invariant failure while loading a scenario document.
/// `path()` is the dotted location of the offending value ("goal",
/// "obstacles[2].radius", "field.sharpness", or "" for the whole document).
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string path, const std::string& reason);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Strict JSON loader: unknown keys are rejected, omitted keys take the
/// documented defaults, and sampler defaults are resolved against the field.
Scenario load_scenario(std::string_view text);
Scenario load_scenario(const nlohmann::json& doc);

/// Fully explicit document; load_scenario(to_json(s)) reproduces s.
nlohmann::ordered_json to_json(const Scenario& s);
std::string save_scenario(const Scenario& s);

nlohmann::ordered_json to_json(const FieldSpec& f);

}  // namespace apf
