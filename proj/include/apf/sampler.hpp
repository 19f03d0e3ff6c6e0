#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "apf/config.hpp"
#include "apf/fields.hpp"
#include "apf/geometry.hpp"
#include "apf/world.hpp"

namespace apf {

struct CandidateEvaluation {
  Point2 point;
  /// World-frame angle of the candidate as seen from the circle center.
  double angle = 0.0;
  bool feasible = false;
  /// Distance from the candidate's one-step successor to the goal; +infinity
  /// when infeasible. Lower is better.
  double score = 0.0;
  bool prioritized = false;
};

/// num_samples points at distance radius from `center`. Index 0 faces the
/// goal, indices then proceed clockwise (decreasing world angle). If center
/// coincides with the goal, index 0 faces +x.
std::vector<Point2> sample_circle(const Point2& center, const Point2& goal, const SamplerConfig& cfg);

/// Candidates within danger_distance of any obstacle are infeasible. Every
/// other candidate is scored by the goal distance of its raw step. A
/// candidate whose own field evaluation is singular is infeasible.
std::vector<CandidateEvaluation> evaluate_candidates(const Point2& center, std::span<const Point2> candidates,
                                                     const World& w, const FieldSpec& spec,
                                                     const SamplerConfig& cfg, const PlannerConfig& planner);

/// Clockwise priority scan. With d the robot's clearance and theta the angle
/// at the robot between the goal and the nearest obstacle surface, the evals
/// are returned unchanged when d > distance_threshold and theta >
/// theta_threshold. Otherwise the first candidate with clearance above the
/// danger distance, scanning clockwise from the candidate nearest the goal,
/// has its score lowered by priority_bonus (floored at 0).
std::vector<CandidateEvaluation> apply_priority(std::vector<CandidateEvaluation> evals, const Point2& robot,
                                                const World& w, const SamplerConfig& cfg);

/// Index of the lowest score, ties to the lowest index; nullopt when nothing is feasible.
std::optional<std::size_t> select_candidate(std::span<const CandidateEvaluation> evals);

struct SamplerDecision {
  std::vector<CandidateEvaluation> evaluations;
  std::optional<std::size_t> selected;
};

/// sample_circle around `raw_next`, then evaluate, prioritize and select.
SamplerDecision sample_next(const Point2& robot, const Point2& raw_next, const World& w, const FieldSpec& spec,
                            const SamplerConfig& cfg, const PlannerConfig& planner);

}  // namespace apf
