#include "apf/fields.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "apf/format.hpp"

namespace apf {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool is_singular(const RepulsiveModel& model) { return !std::holds_alternative<ExponentialGaussian>(model); }

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) throw std::invalid_argument(std::string(what) + " must be finite and positive");
}

// phi'(r) / r, which stays finite at r = 0 for the exponential family.
double first_over_r(const RepulsiveModel& model, double r, double first) {
  if (const auto* e = std::get_if<ExponentialGaussian>(&model))
    return -2.0 * e->amplitude * e->sharpness * std::exp(-e->sharpness * r * r);
  return first / r;
}

}  // namespace

SingularityError::SingularityError(std::size_t obstacle_index, double distance)
    : std::runtime_error("field is singular at clearance " + format_number(distance) + " from obstacle " +
                         std::to_string(obstacle_index)),
      obstacle_index_(obstacle_index),
      distance_(distance) {}

void validate(const RepulsiveModel& model) {
  std::visit(overloaded{
                 [](const InverseDistance& m) { require_positive(m.eta, "eta"); },
                 [](const LogDistance& m) { require_positive(m.c, "c"); },
                 [](const ExponentialGaussian& m) {
                   require_positive(m.amplitude, "amplitude");
                   require_positive(m.sharpness, "sharpness");
                 },
             },
             model);
}

void validate(const FieldSpec& spec) {
  if (!std::isfinite(spec.attractive_gain) || spec.attractive_gain < 0.0)
    throw std::invalid_argument("attractive_gain must be finite and non-negative");
  validate(spec.repulsive);
}

std::string method_name(const RepulsiveModel& model) {
  return std::visit(overloaded{
                        [](const InverseDistance&) { return std::string("inverse"); },
                        [](const LogDistance&) { return std::string("log"); },
                        [](const ExponentialGaussian&) { return std::string("exponential"); },
                    },
                    model);
}

RadialProfile radial_profile(const RepulsiveModel& model, double r) {
  return std::visit(overloaded{
                        [r](const InverseDistance& m) {
                          return RadialProfile{m.eta / r, -m.eta / (r * r), 2.0 * m.eta / (r * r * r)};
                        },
                        [r](const LogDistance& m) {
                          const double s = m.c / std::numbers::ln10;
                          return RadialProfile{-m.c * std::log10(r), -s / r, s / (r * r)};
                        },
                        [r](const ExponentialGaussian& m) {
                          const double e = m.amplitude * std::exp(-m.sharpness * r * r);
                          const double k = m.sharpness;
                          return RadialProfile{e, -2.0 * k * r * e, e * (4.0 * k * k * r * r - 2.0 * k)};
                        },
                    },
                    model);
}

double attractive_potential(const Point2& p, const Point2& goal, double gain) {
  return gain * (p - goal).squared_norm();
}

Vec2 attractive_gradient(const Point2& p, const Point2& goal, double gain) { return (p - goal) * (2.0 * gain); }

double attractive_laplacian(double gain) { return 4.0 * gain; }

FieldSample repulsive_term(const Point2& p, const Obstacle& o, const RepulsiveModel& model,
                           std::size_t obstacle_index) {
  const SurfaceGeometry g = surface_geometry(p, o);
  if (is_singular(model) && g.distance < kMinEvaluationClearance) throw SingularityError(obstacle_index, g.distance);
  const RadialProfile prof = radial_profile(model, g.distance);
  // Chain rule through r(p): grad phi = phi' grad r, lap phi = phi'' |grad r|^2 + phi' lap r.
  const double divergence_term =
      g.radial ? first_over_r(model, g.distance, prof.first) : prof.first * g.curvature;
  return FieldSample{prof.value, g.normal * prof.first, prof.second + divergence_term};
}

namespace {

FieldSample aggregate_repulsion(const Point2& p, const World& w, const RepulsiveModel& model,
                                Aggregation aggregation) {
  FieldSample total;
  const auto& obs = w.obstacles();
  if (aggregation == Aggregation::NearestObstacle) {
    if (const auto c = clearance(p, w)) return repulsive_term(p, obs[c->obstacle_index], model, c->obstacle_index);
    return total;
  }
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const FieldSample t = repulsive_term(p, obs[i], model, i);
    total.potential += t.potential;
    total.gradient += t.gradient;
    total.laplacian += t.laplacian;
  }
  return total;
}

}  // namespace

double repulsive_potential(const Point2& p, const World& w, const RepulsiveModel& model, Aggregation aggregation) {
  return aggregate_repulsion(p, w, model, aggregation).potential;
}

FieldSample field_sample(const Point2& p, const World& w, const FieldSpec& spec) {
  FieldSample s = aggregate_repulsion(p, w, spec.repulsive, spec.aggregation);
  s.potential += attractive_potential(p, w.goal(), spec.attractive_gain);
  s.gradient += attractive_gradient(p, w.goal(), spec.attractive_gain);
  s.laplacian += attractive_laplacian(spec.attractive_gain);
  return s;
}

std::optional<double> danger_distance(const RepulsiveModel& model) {
  if (const auto* e = std::get_if<ExponentialGaussian>(&model)) return 1.0 / std::sqrt(e->sharpness);
  return std::nullopt;
}

bool subharmonic_at(const Point2& p, const World& w, const FieldSpec& spec) {
  if (attractive_laplacian(spec.attractive_gain) < 0.0) return false;
  const auto& obs = w.obstacles();
  std::vector<std::size_t> terms;
  if (spec.aggregation == Aggregation::NearestObstacle) {
    if (const auto c = clearance(p, w)) terms.push_back(c->obstacle_index);
  } else {
    for (std::size_t i = 0; i < obs.size(); ++i) terms.push_back(i);
  }
  try {
    for (const std::size_t i : terms)
      if (repulsive_term(p, obs[i], spec.repulsive, i).laplacian < 0.0) return false;
  } catch (const SingularityError&) {
    return false;
  }
  return true;
}

std::vector<GridCell> field_grid(const World& w, const FieldSpec& spec, std::size_t resolution) {
  if (resolution < 2) throw std::invalid_argument("grid resolution must be at least 2");
  const Bounds& b = w.bounds();
  const double dx = b.width() / static_cast<double>(resolution - 1);
  const double dy = b.height() / static_cast<double>(resolution - 1);
  std::vector<GridCell> cells;
  cells.reserve(resolution * resolution);
  for (std::size_t j = 0; j < resolution; ++j) {
    const double y = j + 1 == resolution ? b.max.y : b.min.y + dy * static_cast<double>(j);
    for (std::size_t i = 0; i < resolution; ++i) {
      const double x = i + 1 == resolution ? b.max.x : b.min.x + dx * static_cast<double>(i);
      GridCell cell{{x, y}, {}, false};
      try {
        cell.sample = field_sample(cell.position, w, spec);
      } catch (const SingularityError&) {
        cell.singular = true;
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

void write_field_csv(std::ostream& out, const std::vector<GridCell>& cells) {
  out << "x,y,potential,grad_x,grad_y,laplacian,singular\n";
  for (const GridCell& c : cells) {
    out << format_number(c.position.x) << ',' << format_number(c.position.y) << ',';
    if (c.singular) {
      out << "nan,nan,nan,nan,1\n";
      continue;
    }
    out << format_number(c.sample.potential) << ',' << format_number(c.sample.gradient.x) << ','
        << format_number(c.sample.gradient.y) << ',' << format_number(c.sample.laplacian) << ",0\n";
  }
}

}  // namespace apf
