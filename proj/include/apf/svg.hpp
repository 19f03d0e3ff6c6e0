#pragma once

#include <optional>
#include <string>

#include "apf/planner.hpp"
#include "apf/world.hpp"

namespace apf {

struct SvgOptions {
  double pixels_per_meter = 80.0;
  /// Dashed danger outline around every obstacle when set.
  std::optional<double> danger_distance;
  std::string title;
};

/// Static, byte-deterministic figure: bounds, obstacles, start/goal markers
/// and the trajectory polyline.
std::string render_svg(const Trajectory& t, const World& w, const SvgOptions& options = {});

}  // namespace apf
