#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "apf/geometry.hpp"

namespace apf {

struct PointObstacle {
  Point2 center;
};

struct CircleObstacle {
  Point2 center;
  double radius = 0.0;
};

struct SegmentObstacle {
  Point2 a;
  Point2 b;
};

using Obstacle = std::variant<PointObstacle, CircleObstacle, SegmentObstacle>;

/// Throws std::invalid_argument when the obstacle parameters are not usable
/// (non-finite coordinates, non-positive radius, coincident segment ends).
void validate_obstacle(const Obstacle& o);

struct Bounds {
  Point2 min;
  Point2 max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  double diagonal() const { return std::hypot(width(), height()); }
  bool contains(const Point2& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
};

/// Distance from a query point to the surface of one obstacle.
struct SurfaceDistance {
  double distance = 0.0;
  Point2 surface_point;
};

/// Surface distance plus the local differential structure of r(p), which the
/// field module needs for gradients and Laplacians through the chain rule.
struct SurfaceGeometry {
  double distance = 0.0;
  Point2 surface_point;
  /// Unit vector grad r; zero where r is not differentiable (r == 0).
  Vec2 normal;
  /// True when laplacian(r) == 1/r (point obstacles, segment end caps).
  bool radial = false;
  /// laplacian(r) when `radial` is false (1/|p-c| for circles, 0 along a
  /// segment's interior strip).
  double curvature = 0.0;
};

SurfaceDistance obstacle_distance(const Point2& p, const Obstacle& o);
SurfaceGeometry surface_geometry(const Point2& p, const Obstacle& o);

/// Immutable planning environment. Construction validates every invariant.
class World {
 public:
  World(Bounds bounds, Point2 start, Point2 goal, std::vector<Obstacle> obstacles);

  const Bounds& bounds() const { return bounds_; }
  const Point2& start() const { return start_; }
  const Point2& goal() const { return goal_; }
  const std::vector<Obstacle>& obstacles() const { return obstacles_; }

 private:
  Bounds bounds_;
  Point2 start_;
  Point2 goal_;
  std::vector<Obstacle> obstacles_;
};

struct Clearance {
  double distance = 0.0;
  std::size_t obstacle_index = 0;
  Point2 surface_point;
};

/// Nearest obstacle surface; std::nullopt for an obstacle-free world.
/// Equidistant obstacles resolve to the lowest index.
std::optional<Clearance> clearance(const Point2& p, const World& w);

/// clearance(p, w)->distance, or +infinity when there are no obstacles.
double clearance_distance(const Point2& p, const World& w);

}  // namespace apf
