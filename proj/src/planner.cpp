#include "apf/planner.hpp"

#include <ostream>
#include <stdexcept>

#include "json.hpp"

#include "apf/format.hpp"
#include "apf/sampler.hpp"

namespace apf {

std::string_view to_string(PlanOutcome outcome) {
  switch (outcome) {
    case PlanOutcome::ReachedGoal: return "ReachedGoal";
    case PlanOutcome::LocalMinimumStall: return "LocalMinimumStall";
    case PlanOutcome::MaxStepsExceeded: return "MaxStepsExceeded";
    case PlanOutcome::DangerViolation: return "DangerViolation";
    case PlanOutcome::AllCandidatesInfeasible: return "AllCandidatesInfeasible";
    case PlanOutcome::Singularity: return "Singularity";
  }
  return "Unknown";
}

double Trajectory::path_length() const {
  double len = 0.0;
  for (std::size_t i = 1; i < steps.size(); ++i) len += distance(steps[i - 1].position, steps[i].position);
  return len;
}

Point2 raw_step(const Point2& p, const World& w, const FieldSpec& spec, const PlannerConfig& cfg) {
  const Vec2 g = field_sample(p, w, spec).gradient;
  const double magnitude = g.norm();
  if (magnitude < cfg.gradient_floor || magnitude == 0.0) return p;
  if (cfg.step_rule == StepRule::RawMagnitude) return p - g * cfg.descent_rate;
  return p - g * (cfg.step_length / magnitude);
}

bool detect_stall(std::span<const StepRecord> window, const PlannerConfig& cfg) {
  if (window.size() < cfg.stall_window + 1) return false;
  return distance(window.front().position, window.back().position) < cfg.stall_displacement;
}

namespace {

StepRecord make_record(std::size_t index, const Point2& p, const World& w, const FieldSpec& spec) {
  const FieldSample s = field_sample(p, w, spec);
  StepRecord r;
  r.index = index;
  r.position = p;
  r.potential = s.potential;
  r.gradient = s.gradient;
  r.clearance = clearance_distance(p, w);
  return r;
}

}  // namespace

Trajectory plan(const World& w, const FieldSpec& spec, const PlannerConfig& cfg,
                const std::optional<SamplerConfig>& sampler) {
  validate(spec);
  validate(cfg, w.bounds());
  std::optional<SamplerConfig> active;
  if (sampler && sampler->enabled) active = resolve(*sampler, spec, cfg);

  const double start_clearance = clearance_distance(w.start(), w);
  if (!(start_clearance > cfg.robot_radius))
    throw std::invalid_argument("start clearance must exceed robot_radius");

  Trajectory t;
  try {
    t.steps.push_back(make_record(0, w.start(), w, spec));
  } catch (const SingularityError& e) {
    throw std::invalid_argument(std::string("field is not evaluable at start: ") + e.what());
  }

  const std::size_t window_records = cfg.stall_window + 1;
  for (;;) {
    const Point2 p = t.steps.back().position;
    if (distance(p, w.goal()) <= cfg.goal_tolerance) {
      t.outcome = PlanOutcome::ReachedGoal;
      break;
    }
    if (t.steps.size() - 1 >= cfg.max_steps) {
      t.outcome = PlanOutcome::MaxStepsExceeded;
      break;
    }

    StepRecord rec;
    try {
      Point2 next = raw_step(p, w, spec, cfg);
      std::optional<std::size_t> chosen;
      std::optional<double> score;
      if (active) {
        const SamplerDecision d = sample_next(p, next, w, spec, *active, cfg);
        if (!d.selected) {
          t.outcome = PlanOutcome::AllCandidatesInfeasible;
          break;
        }
        chosen = d.selected;
        score = d.evaluations[*d.selected].score;
        next = d.evaluations[*d.selected].point;
      }
      rec = make_record(t.steps.size(), next, w, spec);
      rec.sampler_used = active.has_value();
      rec.selected_candidate = chosen;
      rec.score = score;
    } catch (const SingularityError&) {
      t.outcome = PlanOutcome::Singularity;
      break;
    }
    t.steps.push_back(rec);

    if (rec.clearance < cfg.robot_radius) {
      t.outcome = PlanOutcome::DangerViolation;
      break;
    }
    if (distance(rec.position, w.goal()) <= cfg.goal_tolerance) continue;
    if (t.steps.size() >= window_records &&
        detect_stall(std::span(t.steps).last(window_records), cfg)) {
      t.outcome = PlanOutcome::LocalMinimumStall;
      break;
    }
  }
  return t;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
  out << "step,x,y,potential,grad_x,grad_y,clearance,sampler_used,candidate,score\n";
  for (const StepRecord& r : t.steps) {
    out << r.index << ',' << format_number(r.position.x) << ',' << format_number(r.position.y) << ','
        << format_number(r.potential) << ',' << format_number(r.gradient.x) << ',' << format_number(r.gradient.y)
        << ',' << format_number(r.clearance) << ',' << (r.sampler_used ? 1 : 0) << ',';
    if (r.selected_candidate) out << *r.selected_candidate;
    out << ',';
    if (r.score) out << format_number(*r.score);
    out << '\n';
  }
  nlohmann::ordered_json summary;
  summary["outcome"] = std::string(to_string(t.outcome));
  summary["steps"] = t.steps.size() - 1;
  summary["path_length"] = t.path_length();
  out << "# summary " << summary.dump() << '\n';
}

}  // namespace apf
