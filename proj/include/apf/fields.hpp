#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "apf/geometry.hpp"
#include "apf/world.hpp"

namespace apf {

/// Clearance below which the singular families (inverse, log) refuse to
/// evaluate.
inline constexpr double kMinEvaluationClearance = 1e-6;

/// phi(r) = eta / r
struct InverseDistance {
  double eta = 0.5;
};

/// phi(r) = -c * log10(r); harmonic around point obstacles.
struct LogDistance {
  double c = 0.5;
};

/// phi(r) = amplitude * exp(-sharpness * r^2); subharmonic for r >= 1/sqrt(sharpness).
struct ExponentialGaussian {
  double amplitude = 2.0;
  double sharpness = 4.0;
};

using RepulsiveModel = std::variant<InverseDistance, LogDistance, ExponentialGaussian>;

enum class Aggregation { Superposition, NearestObstacle };

struct FieldSpec {
  double attractive_gain = 0.5;
  RepulsiveModel repulsive = ExponentialGaussian{};
  Aggregation aggregation = Aggregation::Superposition;
};

/// Throws std::invalid_argument on non-finite or non-positive parameters.
void validate(const RepulsiveModel& model);
void validate(const FieldSpec& spec);

/// "inverse", "log" or "exponential".
std::string method_name(const RepulsiveModel& model);

struct FieldSample {
  double potential = 0.0;
  Vec2 gradient;
  double laplacian = 0.0;
};

/// Raised when a singular model is evaluated closer than
/// kMinEvaluationClearance to an obstacle surface.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(std::size_t obstacle_index, double distance);
  std::size_t obstacle_index() const { return obstacle_index_; }
  double distance() const { return distance_; }

 private:
  std::size_t obstacle_index_;
  double distance_;
};

/// phi(r), phi'(r), phi''(r) of one repulsive term as a function of surface distance.
struct RadialProfile {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};

RadialProfile radial_profile(const RepulsiveModel& model, double r);

double attractive_potential(const Point2& p, const Point2& goal, double gain);
Vec2 attractive_gradient(const Point2& p, const Point2& goal, double gain);
double attractive_laplacian(double gain);

/// Contribution of a single obstacle. Throws SingularityError (tagged with
/// `obstacle_index`) for singular models at clearance < kMinEvaluationClearance.
FieldSample repulsive_term(const Point2& p, const Obstacle& o, const RepulsiveModel& model,
                           std::size_t obstacle_index = 0);

double repulsive_potential(const Point2& p, const World& w, const RepulsiveModel& model,
                           Aggregation aggregation = Aggregation::Superposition);

/// Total field: attractive term plus aggregated repulsion, with analytic
/// gradient and Laplacian.
FieldSample field_sample(const Point2& p, const World& w, const FieldSpec& spec);

/// 1/sqrt(sharpness) for the exponential family, otherwise not defined.
std::optional<double> danger_distance(const RepulsiveModel& model);

/// True iff every additive term has a non-negative analytic Laplacian at p.
/// Points where a singular term cannot be evaluated are reported as false.
bool subharmonic_at(const Point2& p, const World& w, const FieldSpec& spec);

struct GridCell {
  Point2 position;
  FieldSample sample;
  bool singular = false;
};

/// Row-major (y outer, x inner) samples over the world bounds, `resolution`
/// cells per axis including both edges. Throws std::invalid_argument if
/// resolution < 2.
std::vector<GridCell> field_grid(const World& w, const FieldSpec& spec, std::size_t resolution);

/// Header `x,y,potential,grad_x,grad_y,laplacian,singular`, 9 significant digits.
void write_field_csv(std::ostream& out, const std::vector<GridCell>& cells);

}  // namespace apf
