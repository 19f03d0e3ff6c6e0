#include "apf/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "apf/planner.hpp"

namespace apf {
namespace {

constexpr double kInfeasible = std::numeric_limits<double>::infinity();

}  // namespace

std::vector<Point2> sample_circle(const Point2& center, const Point2& goal, const SamplerConfig& cfg) {
  const Vec2 to_goal = goal - center;
  const double base = to_goal.squared_norm() > 0.0 ? std::atan2(to_goal.y, to_goal.x) : 0.0;
  const double radius = cfg.radius.value();
  const std::size_t n = cfg.num_samples;
  std::vector<Point2> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = base - 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    points.push_back(center + Vec2{std::cos(a), std::sin(a)} * radius);
  }
  return points;
}

std::vector<CandidateEvaluation> evaluate_candidates(const Point2& center, std::span<const Point2> candidates,
                                                     const World& w, const FieldSpec& spec,
                                                     const SamplerConfig& cfg, const PlannerConfig& planner) {
  const double danger = cfg.danger_distance.value();
  std::vector<CandidateEvaluation> evals;
  evals.reserve(candidates.size());
  for (const Point2& c : candidates) {
    CandidateEvaluation e;
    e.point = c;
    e.angle = std::atan2(c.y - center.y, c.x - center.x);
    e.score = kInfeasible;
    if (clearance_distance(c, w) > danger) {
      try {
        e.score = distance(raw_step(c, w, spec, planner), w.goal());
        e.feasible = true;
      } catch (const SingularityError&) {
      }
    }
    evals.push_back(e);
  }
  return evals;
}

std::vector<CandidateEvaluation> apply_priority(std::vector<CandidateEvaluation> evals, const Point2& robot,
                                                const World& w, const SamplerConfig& cfg) {
  if (evals.empty()) return evals;
  const auto nearest = clearance(robot, w);
  if (!nearest) return evals;
  const double theta = angle_between(w.goal() - robot, nearest->surface_point - robot);
  if (nearest->distance > cfg.distance_threshold.value() && theta > cfg.theta_threshold) return evals;

  std::size_t start = 0;
  double best = distance(evals[0].point, w.goal());
  for (std::size_t i = 1; i < evals.size(); ++i) {
    const double d = distance(evals[i].point, w.goal());
    if (d < best) {
      best = d;
      start = i;
    }
  }
  // Feasible already means clearance above the danger distance.
  for (std::size_t k = 0; k < evals.size(); ++k) {
    CandidateEvaluation& e = evals[(start + k) % evals.size()];
    if (e.feasible) {
      e.prioritized = true;
      e.score = std::max(0.0, e.score - cfg.priority_bonus.value());
      break;
    }
  }
  return evals;
}

std::optional<std::size_t> select_candidate(std::span<const CandidateEvaluation> evals) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < evals.size(); ++i) {
    if (!evals[i].feasible) continue;
    if (!best || evals[i].score < evals[*best].score) best = i;
  }
  return best;
}

SamplerDecision sample_next(const Point2& robot, const Point2& raw_next, const World& w, const FieldSpec& spec,
                            const SamplerConfig& cfg, const PlannerConfig& planner) {
  const std::vector<Point2> candidates = sample_circle(raw_next, w.goal(), cfg);
  SamplerDecision d;
  d.evaluations = apply_priority(evaluate_candidates(raw_next, candidates, w, spec, cfg, planner), robot, w, cfg);
  d.selected = select_candidate(d.evaluations);
  return d;
}

}  // namespace apf
