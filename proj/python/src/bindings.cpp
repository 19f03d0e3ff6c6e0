#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "apf/fields.hpp"
#include "apf/harness.hpp"
#include "apf/planner.hpp"
#include "apf/scenario.hpp"
#include "apf/svg.hpp"

namespace py = pybind11;
using namespace apf;

namespace {

Scenario scenario_from(const std::string& source) {
  if (const auto id = parse_scenario_id(source)) return builtin_scenario(*id);
  return load_scenario(std::string_view(source));
}

py::tuple xy(const Point2& p) { return py::make_tuple(p.x, p.y); }

struct PyTrajectory {
  Trajectory trajectory;
  World world;
  std::optional<double> danger;

  std::string outcome() const { return std::string(to_string(trajectory.outcome)); }

  py::array_t<double> positions() const {
    py::array_t<double> out({trajectory.steps.size(), std::size_t{2}});
    auto m = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < trajectory.steps.size(); ++i) {
      m(i, 0) = trajectory.steps[i].position.x;
      m(i, 1) = trajectory.steps[i].position.y;
    }
    return out;
  }

  py::array_t<double> clearances() const {
    py::array_t<double> out(trajectory.steps.size());
    auto m = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < trajectory.steps.size(); ++i) m(i) = trajectory.steps[i].clearance;
    return out;
  }

  py::dict metrics_dict() const {
    const PathMetrics m = metrics(trajectory);
    py::dict d;
    d["path_length"] = m.path_length;
    d["max_heading_change"] = m.max_heading_change;
    d["mean_heading_change"] = m.mean_heading_change;
    d["oscillation_index"] = m.oscillation_index;
    d["min_clearance"] = m.min_clearance;
    d["steps"] = m.steps;
    return d;
  }

  std::string csv() const {
    std::ostringstream out;
    write_trajectory_csv(out, trajectory);
    return out.str();
  }

  std::string svg() const {
    SvgOptions opts;
    opts.danger_distance = danger;
    return render_svg(trajectory, world, opts);
  }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Potential-field path planning with circular sampling.";

  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
  py::register_exception<SingularityError>(m, "SingularityError", PyExc_ArithmeticError);

  py::class_<Scenario>(m, "Scenario")
      .def_static("load", &scenario_from, py::arg("source"),
                  "Built-in scenario id or a JSON scenario document.")
      .def_readonly("name", &Scenario::name)
      .def_property_readonly("start", [](const Scenario& s) { return xy(s.world.start()); })
      .def_property_readonly("goal", [](const Scenario& s) { return xy(s.world.goal()); })
      .def_property_readonly("obstacle_count", [](const Scenario& s) { return s.world.obstacles().size(); })
      .def_property_readonly("method", [](const Scenario& s) { return method_name(s.field.repulsive); })
      .def_property_readonly("sampler_enabled", [](const Scenario& s) { return s.sampler.enabled; })
      .def_property_readonly("danger_distance", [](const Scenario& s) { return s.sampler.danger_distance; })
      .def("to_json", &save_scenario);

  py::class_<PyTrajectory>(m, "Trajectory")
      .def_property_readonly("outcome", &PyTrajectory::outcome)
      .def_property_readonly("positions", &PyTrajectory::positions)
      .def_property_readonly("clearances", &PyTrajectory::clearances)
      .def("metrics", &PyTrajectory::metrics_dict)
      .def("to_csv", &PyTrajectory::csv)
      .def("to_svg", &PyTrajectory::svg)
      .def("__len__", [](const PyTrajectory& t) { return t.trajectory.steps.size(); });

  m.def("scenario_ids", [] {
    std::vector<std::string> ids;
    for (const ScenarioId id : all_scenarios()) ids.emplace_back(to_string(id));
    return ids;
  });

  m.def("scenario_document", [](const std::string& id) {
    const auto parsed = parse_scenario_id(id);
    if (!parsed) throw py::value_error("unknown scenario '" + id + "'");
    return builtin_document(*parsed).dump();
  });

  m.def(
      "plan",
      [](const Scenario& s) {
        Trajectory t;
        {
          py::gil_scoped_release release;
          t = plan(s.world, s.field, s.planner, s.sampler);
        }
        return PyTrajectory{std::move(t), s.world, s.sampler.danger_distance};
      },
      py::arg("scenario"));

  m.def(
      "field_sample",
      [](const Scenario& s, double x, double y) {
        const FieldSample f = field_sample({x, y}, s.world, s.field);
        return py::make_tuple(f.potential, xy(f.gradient), f.laplacian);
      },
      py::arg("scenario"), py::arg("x"), py::arg("y"));

  m.def(
      "field_grid",
      [](const Scenario& s, std::size_t resolution) {
        const auto cells = field_grid(s.world, s.field, resolution);
        py::array_t<double> out({cells.size(), std::size_t{7}});
        auto a = out.mutable_unchecked<2>();
        const double nan = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t i = 0; i < cells.size(); ++i) {
          const GridCell& c = cells[i];
          a(i, 0) = c.position.x;
          a(i, 1) = c.position.y;
          a(i, 2) = c.singular ? nan : c.sample.potential;
          a(i, 3) = c.singular ? nan : c.sample.gradient.x;
          a(i, 4) = c.singular ? nan : c.sample.gradient.y;
          a(i, 5) = c.singular ? nan : c.sample.laplacian;
          a(i, 6) = c.singular ? 1.0 : 0.0;
        }
        return out;
      },
      py::arg("scenario"), py::arg("resolution"),
      "Rows of x, y, potential, grad_x, grad_y, laplacian, singular.");

  m.def(
      "compare",
      [](const std::vector<std::string>& scenarios, const std::vector<std::string>& methods) {
        std::vector<ScenarioId> ids;
        for (const std::string& name : scenarios) {
          const auto id = parse_scenario_id(name);
          if (!id) throw py::value_error("unknown scenario '" + name + "'");
          ids.push_back(*id);
        }
        std::vector<MethodSetting> settings;
        if (methods.empty()) settings = baseline_settings();
        for (const std::string& name : methods) {
          const auto s = parse_method_setting(name);
          if (!s) throw py::value_error("unknown method '" + name + "'");
          settings.push_back(*s);
        }
        AblationReport r;
        {
          py::gil_scoped_release release;
          r = run_ablation(ids, settings);
        }
        return to_json(r).dump();
      },
      py::arg("scenarios"), py::arg("methods") = std::vector<std::string>{});
}
