#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. Nothing here calls into the field, sampler or planner code; only the
// plain geometry types are shared.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "apf/geometry.hpp"

namespace oracle {

using apf::Vec2;

struct Obs {
  enum Kind { Point, Circle, Segment } kind = Point;
  Vec2 a;
  Vec2 b;
  double radius = 0.0;
};

// Closest surface point by direct projection.
inline Vec2 closest(const Vec2& p, const Obs& o) {
  switch (o.kind) {
    case Obs::Point: return o.a;
    case Obs::Circle: {
      const double dx = p.x - o.a.x, dy = p.y - o.a.y;
      const double d = std::sqrt(dx * dx + dy * dy);
      if (d <= o.radius) return p;
      return {o.a.x + dx / d * o.radius, o.a.y + dy / d * o.radius};
    }
    case Obs::Segment: {
      const double ux = o.b.x - o.a.x, uy = o.b.y - o.a.y;
      double t = ((p.x - o.a.x) * ux + (p.y - o.a.y) * uy) / (ux * ux + uy * uy);
      t = std::clamp(t, 0.0, 1.0);
      return {o.a.x + t * ux, o.a.y + t * uy};
    }
  }
  return o.a;
}

inline double dist(const Vec2& p, const Obs& o) {
  const Vec2 c = closest(p, o);
  return std::sqrt((p.x - c.x) * (p.x - c.x) + (p.y - c.y) * (p.y - c.y));
}

inline double min_dist(const Vec2& p, const std::vector<Obs>& obs) {
  double m = std::numeric_limits<double>::infinity();
  for (const Obs& o : obs) m = std::min(m, dist(p, o));
  return m;
}

enum class Family { Inverse, Log, Exponential };

struct Field {
  Family family = Family::Exponential;
  double gain = 0.5;
  double eta = 0.5;
  double c = 0.5;
  double amplitude = 2.0;
  double sharpness = 4.0;
};

inline double phi(const Field& f, double r) {
  switch (f.family) {
    case Family::Inverse: return f.eta / r;
    case Family::Log: return -f.c * std::log10(r);
    case Family::Exponential: return f.amplitude * std::exp(-f.sharpness * r * r);
  }
  return 0.0;
}

inline double dphi(const Field& f, double r) {
  switch (f.family) {
    case Family::Inverse: return -f.eta / (r * r);
    case Family::Log: return -f.c / (r * std::log(10.0));
    case Family::Exponential: return -2.0 * f.sharpness * r * f.amplitude * std::exp(-f.sharpness * r * r);
  }
  return 0.0;
}

inline double potential(const Vec2& p, const Vec2& goal, const std::vector<Obs>& obs, const Field& f) {
  const double gx = p.x - goal.x, gy = p.y - goal.y;
  double u = f.gain * (gx * gx + gy * gy);
  for (const Obs& o : obs) u += phi(f, dist(p, o));
  return u;
}

// Closed-form gradient: attractive 2k(p-g) plus phi'(r) along the outward
// direction from the closest surface point.
inline Vec2 gradient(const Vec2& p, const Vec2& goal, const std::vector<Obs>& obs, const Field& f) {
  Vec2 g{2.0 * f.gain * (p.x - goal.x), 2.0 * f.gain * (p.y - goal.y)};
  for (const Obs& o : obs) {
    const Vec2 c = closest(p, o);
    const double r = std::sqrt((p.x - c.x) * (p.x - c.x) + (p.y - c.y) * (p.y - c.y));
    if (r == 0.0) continue;
    const double s = dphi(f, r) / r;
    g.x += s * (p.x - c.x);
    g.y += s * (p.y - c.y);
  }
  return g;
}

template <class F>
Vec2 fd_gradient(F&& u, const Vec2& p, double h) {
  return {(u(Vec2{p.x + h, p.y}) - u(Vec2{p.x - h, p.y})) / (2.0 * h),
          (u(Vec2{p.x, p.y + h}) - u(Vec2{p.x, p.y - h})) / (2.0 * h)};
}

template <class F>
double fd_laplacian(F&& u, const Vec2& p, double h) {
  return (u(Vec2{p.x + h, p.y}) + u(Vec2{p.x - h, p.y}) + u(Vec2{p.x, p.y + h}) + u(Vec2{p.x, p.y - h}) -
          4.0 * u(p)) /
         (h * h);
}

struct Candidate {
  Vec2 point;
  bool feasible = false;
  double score = std::numeric_limits<double>::infinity();
};

// Circular sampling with priority disabled: N points on a circle of radius rho
// around `center`, index 0 toward the goal, clockwise. A point is feasible
// when every obstacle is farther than `danger`; its score is the goal
// distance after one fixed-length descent step from it.
inline std::vector<Candidate> sample_and_score(const Vec2& center, const Vec2& goal, const std::vector<Obs>& obs,
                                               const Field& f, std::size_t n, double rho, double danger,
                                               double step, double floor = 1e-9) {
  std::vector<Candidate> out(n);
  const double base = std::atan2(goal.y - center.y, goal.x - center.x);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = base - 2.0 * std::numbers::pi * double(i) / double(n);
    Candidate& c = out[i];
    c.point = {center.x + rho * std::cos(a), center.y + rho * std::sin(a)};
    if (!(min_dist(c.point, obs) > danger)) continue;
    const Vec2 g = gradient(c.point, goal, obs, f);
    const double m = std::sqrt(g.x * g.x + g.y * g.y);
    Vec2 next = c.point;
    if (m >= floor && m > 0.0) next = {c.point.x - step * g.x / m, c.point.y - step * g.y / m};
    c.feasible = true;
    c.score = std::sqrt((next.x - goal.x) * (next.x - goal.x) + (next.y - goal.y) * (next.y - goal.y));
  }
  return out;
}

inline std::optional<std::size_t> argmin(const std::vector<Candidate>& cs) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (cs[i].feasible && (!best || cs[i].score < cs[*best].score)) best = i;
  return best;
}

}  // namespace oracle
