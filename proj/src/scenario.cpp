#include "apf/scenario.hpp"

#include <cmath>
#include <set>

namespace apf {
namespace {

using nlohmann::json;

std::string join(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }

// Object view that records which keys were consumed so leftovers can be rejected.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ScenarioError(path_, "expected an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }
  std::string path_of(const std::string& key) const { return join(path_, key); }

  const json& at(const std::string& key) {
    seen_.insert(key);
    if (!obj_.contains(key)) throw ScenarioError(path_of(key), "missing required key");
    return obj_.at(key);
  }

  double number(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number()) throw ScenarioError(path_of(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ScenarioError(path_of(key), "must be finite");
    return d;
  }

  double number_or(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  std::optional<double> optional_number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  std::size_t count_or(const std::string& key, std::size_t fallback) {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw ScenarioError(path_of(key), "expected a non-negative integer");
    return v.get<std::size_t>();
  }

  bool boolean_or(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_boolean()) throw ScenarioError(path_of(key), "expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) throw ScenarioError(path_of(key), "expected a string");
    return v.get<std::string>();
  }

  Point2 point(const std::string& key) {
    const json& v = at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw ScenarioError(path_of(key), "expected [x, y]");
    const Point2 p{v[0].get<double>(), v[1].get<double>()};
    if (!p.finite()) throw ScenarioError(path_of(key), "coordinates must be finite");
    return p;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : obj_.items())
      if (!seen_.contains(key)) throw ScenarioError(path_of(key), "unknown key");
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

void check(bool ok, const std::string& path, const std::string& reason) {
  if (!ok) throw ScenarioError(path, reason);
}

Obstacle read_obstacle(const json& v, const std::string& path) {
  ObjectReader r(v, path);
  const std::string type = r.string("type");
  Obstacle o;
  if (type == "point") {
    o = PointObstacle{r.point("center")};
  } else if (type == "circle") {
    CircleObstacle c{r.point("center"), r.number("radius")};
    check(c.radius > 0.0, r.path_of("radius"), "must be positive");
    o = c;
  } else if (type == "segment") {
    SegmentObstacle s{r.point("a"), r.point("b")};
    check(!(s.a == s.b), r.path_of("b"), "segment endpoints must be distinct");
    o = s;
  } else {
    throw ScenarioError(r.path_of("type"), "expected \"point\", \"circle\" or \"segment\"");
  }
  r.reject_unknown();
  return o;
}

FieldSpec read_field(const json& v) {
  ObjectReader r(v, "field");
  FieldSpec f;
  f.attractive_gain = r.number_or("attractive_gain", f.attractive_gain);
  check(f.attractive_gain >= 0.0, r.path_of("attractive_gain"), "must be non-negative");
  const std::string method = r.has("method") ? r.string("method") : "exponential";
  auto positive = [&](const std::string& key, double fallback) {
    const double x = r.number_or(key, fallback);
    check(x > 0.0, r.path_of(key), "must be positive");
    return x;
  };
  if (method == "inverse") {
    f.repulsive = InverseDistance{positive("eta", InverseDistance{}.eta)};
  } else if (method == "log") {
    f.repulsive = LogDistance{positive("c", LogDistance{}.c)};
  } else if (method == "exponential") {
    const ExponentialGaussian d;
    f.repulsive = ExponentialGaussian{positive("amplitude", d.amplitude), positive("sharpness", d.sharpness)};
  } else {
    throw ScenarioError(r.path_of("method"), "expected \"inverse\", \"log\" or \"exponential\"");
  }
  if (r.has("aggregation")) {
    const std::string agg = r.string("aggregation");
    if (agg == "superposition")
      f.aggregation = Aggregation::Superposition;
    else if (agg == "nearest")
      f.aggregation = Aggregation::NearestObstacle;
    else
      throw ScenarioError(r.path_of("aggregation"), "expected \"superposition\" or \"nearest\"");
  }
  for (const auto& [key, value] : v.items()) {
    const bool family_key = key == "eta" || key == "c" || key == "amplitude" || key == "sharpness";
    const bool belongs = (key == "eta" && method == "inverse") || (key == "c" && method == "log") ||
                         ((key == "amplitude" || key == "sharpness") && method == "exponential");
    if (family_key && !belongs) throw ScenarioError(r.path_of(key), "not a parameter of method \"" + method + "\"");
  }
  r.reject_unknown();
  return f;
}

PlannerConfig read_planner(const json& v) {
  ObjectReader r(v, "planner");
  PlannerConfig c;
  c.step_length = r.number_or("step_length", c.step_length);
  c.goal_tolerance = r.number_or("goal_tolerance", c.goal_tolerance);
  c.max_steps = r.count_or("max_steps", c.max_steps);
  c.robot_radius = r.number_or("robot_radius", c.robot_radius);
  c.stall_window = r.count_or("stall_window", c.stall_window);
  c.stall_displacement = r.number_or("stall_displacement", c.stall_displacement);
  c.gradient_floor = r.number_or("gradient_floor", c.gradient_floor);
  c.descent_rate = r.number_or("descent_rate", c.descent_rate);
  if (r.has("step_rule")) {
    const std::string rule = r.string("step_rule");
    if (rule == "fixed")
      c.step_rule = StepRule::FixedArcLength;
    else if (rule == "raw_magnitude")
      c.step_rule = StepRule::RawMagnitude;
    else
      throw ScenarioError(r.path_of("step_rule"), "expected \"fixed\" or \"raw_magnitude\"");
  }
  r.reject_unknown();
  return c;
}

SamplerConfig read_sampler(const json& v) {
  ObjectReader r(v, "sampler");
  SamplerConfig c;
  c.enabled = r.boolean_or("enabled", c.enabled);
  c.num_samples = r.count_or("num_samples", c.num_samples);
  c.radius = r.optional_number("radius");
  c.danger_distance = r.optional_number("danger_distance");
  c.priority_bonus = r.optional_number("priority_bonus");
  c.theta_threshold = r.number_or("theta_threshold", c.theta_threshold);
  c.distance_threshold = r.optional_number("distance_threshold");
  r.reject_unknown();
  return c;
}

// Maps std::invalid_argument messages from the config validators onto the
// field path they concern (messages start with the field name).
[[noreturn]] void rethrow_with_path(const std::string& section, const std::invalid_argument& e) {
  const std::string msg = e.what();
  const auto space = msg.find(' ');
  const std::string key = msg.substr(0, space);
  throw ScenarioError(section + "." + key, msg);
}

template <class T>
void put_point(T& j, const char* key, const Point2& p) {
  j[key] = {p.x, p.y};
}

}  // namespace

ScenarioError::ScenarioError(std::string path, const std::string& reason)
    : std::runtime_error((path.empty() ? std::string("scenario") : path) + ": " + reason), path_(std::move(path)) {}

Scenario load_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError("", std::string("parse error: ") + e.what());
  }
  return load_scenario(doc);
}

Scenario load_scenario(const json& doc) {
  ObjectReader r(doc, "");
  const std::string name = r.has("name") ? r.string("name") : std::string();

  Bounds bounds;
  {
    ObjectReader b(r.at("bounds"), "bounds");
    bounds.min = b.point("min");
    bounds.max = b.point("max");
    b.reject_unknown();
    check(bounds.width() > 0.0 && bounds.height() > 0.0, "bounds", "must have positive width and height");
  }
  const Point2 start = r.point("start");
  check(bounds.contains(start), "start", "lies outside bounds");
  const Point2 goal = r.point("goal");
  check(bounds.contains(goal), "goal", "lies outside bounds");

  std::vector<Obstacle> obstacles;
  if (r.has("obstacles")) {
    const json& list = r.at("obstacles");
    check(list.is_array(), "obstacles", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i)
      obstacles.push_back(read_obstacle(list[i], "obstacles[" + std::to_string(i) + "]"));
  }

  const FieldSpec field = r.has("field") ? read_field(r.at("field")) : FieldSpec{};
  const PlannerConfig planner = r.has("planner") ? read_planner(r.at("planner")) : PlannerConfig{};
  SamplerConfig sampler = r.has("sampler") ? read_sampler(r.at("sampler")) : SamplerConfig{};
  r.reject_unknown();

  try {
    validate(planner, bounds);
  } catch (const std::invalid_argument& e) {
    rethrow_with_path("planner", e);
  }
  try {
    sampler = resolve(sampler, field, planner);
  } catch (const std::invalid_argument& e) {
    rethrow_with_path("sampler", e);
  }
  return Scenario{name, World(bounds, start, goal, std::move(obstacles)), field, planner, sampler};
}

nlohmann::ordered_json to_json(const FieldSpec& f) {
  nlohmann::ordered_json j;
  j["method"] = method_name(f.repulsive);
  j["attractive_gain"] = f.attractive_gain;
  if (const auto* m = std::get_if<InverseDistance>(&f.repulsive)) j["eta"] = m->eta;
  if (const auto* m = std::get_if<LogDistance>(&f.repulsive)) j["c"] = m->c;
  if (const auto* m = std::get_if<ExponentialGaussian>(&f.repulsive)) {
    j["amplitude"] = m->amplitude;
    j["sharpness"] = m->sharpness;
  }
  j["aggregation"] = f.aggregation == Aggregation::Superposition ? "superposition" : "nearest";
  return j;
}

nlohmann::ordered_json to_json(const Scenario& s) {
  nlohmann::ordered_json j;
  if (!s.name.empty()) j["name"] = s.name;
  const World& w = s.world;
  nlohmann::ordered_json bounds;
  put_point(bounds, "min", w.bounds().min);
  put_point(bounds, "max", w.bounds().max);
  j["bounds"] = bounds;
  put_point(j, "start", w.start());
  put_point(j, "goal", w.goal());
  j["obstacles"] = nlohmann::ordered_json::array();
  for (const Obstacle& o : w.obstacles()) {
    nlohmann::ordered_json oj;
    if (const auto* p = std::get_if<PointObstacle>(&o)) {
      oj["type"] = "point";
      put_point(oj, "center", p->center);
    } else if (const auto* c = std::get_if<CircleObstacle>(&o)) {
      oj["type"] = "circle";
      put_point(oj, "center", c->center);
      oj["radius"] = c->radius;
    } else if (const auto* sg = std::get_if<SegmentObstacle>(&o)) {
      oj["type"] = "segment";
      put_point(oj, "a", sg->a);
      put_point(oj, "b", sg->b);
    }
    j["obstacles"].push_back(oj);
  }
  j["field"] = to_json(s.field);

  const PlannerConfig& p = s.planner;
  j["planner"] = {{"step_length", p.step_length},
                  {"goal_tolerance", p.goal_tolerance},
                  {"max_steps", p.max_steps},
                  {"robot_radius", p.robot_radius},
                  {"stall_window", p.stall_window},
                  {"stall_displacement", p.stall_displacement},
                  {"gradient_floor", p.gradient_floor},
                  {"step_rule", p.step_rule == StepRule::FixedArcLength ? "fixed" : "raw_magnitude"},
                  {"descent_rate", p.descent_rate}};

  const SamplerConfig& c = s.sampler;
  nlohmann::ordered_json sj;
  sj["enabled"] = c.enabled;
  sj["num_samples"] = c.num_samples;
  if (c.radius) sj["radius"] = *c.radius;
  if (c.danger_distance) sj["danger_distance"] = *c.danger_distance;
  if (c.priority_bonus) sj["priority_bonus"] = *c.priority_bonus;
  sj["theta_threshold"] = c.theta_threshold;
  if (c.distance_threshold) sj["distance_threshold"] = *c.distance_threshold;
  j["sampler"] = sj;
  return j;
}

std::string save_scenario(const Scenario& s) { return to_json(s).dump(2) + "\n"; }

}  // namespace apf
