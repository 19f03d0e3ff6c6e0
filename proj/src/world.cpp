#include "apf/world.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace apf {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

SurfaceGeometry radial_geometry(const Point2& p, const Point2& center) {
  const Vec2 d = p - center;
  const double r = d.norm();
  SurfaceGeometry g;
  g.distance = r;
  g.surface_point = center;
  g.normal = r > 0.0 ? d / r : Vec2{};
  g.radial = true;
  return g;
}

}  // namespace

void validate_obstacle(const Obstacle& o) {
  std::visit(overloaded{
                 [](const PointObstacle& ob) {
                   if (!ob.center.finite()) throw std::invalid_argument("point obstacle center is not finite");
                 },
                 [](const CircleObstacle& ob) {
                   if (!ob.center.finite()) throw std::invalid_argument("circle obstacle center is not finite");
                   if (!std::isfinite(ob.radius) || ob.radius <= 0.0)
                     throw std::invalid_argument("circle obstacle radius must be positive");
                 },
                 [](const SegmentObstacle& ob) {
                   if (!ob.a.finite() || !ob.b.finite())
                     throw std::invalid_argument("segment obstacle endpoint is not finite");
                   if (ob.a == ob.b) throw std::invalid_argument("segment obstacle endpoints coincide");
                 },
             },
             o);
}

SurfaceGeometry surface_geometry(const Point2& p, const Obstacle& o) {
  return std::visit(
      overloaded{
          [&](const PointObstacle& ob) { return radial_geometry(p, ob.center); },
          [&](const CircleObstacle& ob) {
            const Vec2 d = p - ob.center;
            const double rho = d.norm();
            SurfaceGeometry g;
            if (rho <= ob.radius) {
              // Contact or interior: the query point itself is the nearest obstacle point.
              g.surface_point = p;
              return g;
            }
            g.normal = d / rho;
            g.surface_point = ob.center + g.normal * ob.radius;
            g.curvature = 1.0 / rho;
            g.distance = rho - ob.radius;
            return g;
          },
          [&](const SegmentObstacle& ob) {
            const Vec2 ab = ob.b - ob.a;
            const double t = (p - ob.a).dot(ab) / ab.squared_norm();
            if (t <= 0.0) return radial_geometry(p, ob.a);
            if (t >= 1.0) return radial_geometry(p, ob.b);
            SurfaceGeometry g;
            g.surface_point = ob.a + ab * t;
            const Vec2 d = p - g.surface_point;
            g.distance = d.norm();
            g.normal = g.distance > 0.0 ? d / g.distance : Vec2{};
            g.curvature = 0.0;
            return g;
          },
      },
      o);
}

SurfaceDistance obstacle_distance(const Point2& p, const Obstacle& o) {
  const SurfaceGeometry g = surface_geometry(p, o);
  return {g.distance, g.surface_point};
}

World::World(Bounds bounds, Point2 start, Point2 goal, std::vector<Obstacle> obstacles)
    : bounds_(bounds), start_(start), goal_(goal), obstacles_(std::move(obstacles)) {
  if (!bounds_.min.finite() || !bounds_.max.finite() || !(bounds_.width() > 0.0) || !(bounds_.height() > 0.0))
    throw std::invalid_argument("bounds must have positive width and height");
  if (!start_.finite() || !bounds_.contains(start_)) throw std::invalid_argument("start lies outside bounds");
  if (!goal_.finite() || !bounds_.contains(goal_)) throw std::invalid_argument("goal lies outside bounds");
  for (std::size_t i = 0; i < obstacles_.size(); ++i) {
    try {
      validate_obstacle(obstacles_[i]);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("obstacle " + std::to_string(i) + ": " + e.what());
    }
  }
}

std::optional<Clearance> clearance(const Point2& p, const World& w) {
  std::optional<Clearance> best;
  const auto& obs = w.obstacles();
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const SurfaceDistance d = obstacle_distance(p, obs[i]);
    if (!best || d.distance < best->distance) best = Clearance{d.distance, i, d.surface_point};
  }
  return best;
}

double clearance_distance(const Point2& p, const World& w) {
  const auto c = clearance(p, w);
  return c ? c->distance : std::numeric_limits<double>::infinity();
}

}  // namespace apf
