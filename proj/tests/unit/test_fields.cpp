#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"

#include "apf/fields.hpp"
#include "oracles.hpp"

using namespace apf;

namespace {

const std::vector<Obstacle> kFourPoints = {PointObstacle{{1, 1}}, PointObstacle{{-1, -1}}, PointObstacle{{-1, 1}},
                                           PointObstacle{{1, -1}}};

World world_with(std::vector<Obstacle> obs, Point2 goal = {2.5, 2.5}) {
  return World(Bounds{{-3, -3}, {3, 3}}, {-2.5, -2.5}, goal, std::move(obs));
}

FieldSpec repulsive_only(RepulsiveModel m) { return FieldSpec{0.0, m, Aggregation::Superposition}; }

oracle::Obs to_oracle(const Obstacle& o) {
  if (const auto* p = std::get_if<PointObstacle>(&o)) return {oracle::Obs::Point, p->center, {}, 0.0};
  if (const auto* c = std::get_if<CircleObstacle>(&o)) return {oracle::Obs::Circle, c->center, {}, c->radius};
  const auto& s = std::get<SegmentObstacle>(o);
  return {oracle::Obs::Segment, s.a, s.b, 0.0};
}

oracle::Field to_oracle(const FieldSpec& f) {
  oracle::Field o;
  o.gain = f.attractive_gain;
  if (const auto* m = std::get_if<InverseDistance>(&f.repulsive)) {
    o.family = oracle::Family::Inverse;
    o.eta = m->eta;
  } else if (const auto* m = std::get_if<LogDistance>(&f.repulsive)) {
    o.family = oracle::Family::Log;
    o.c = m->c;
  } else {
    const auto& e = std::get<ExponentialGaussian>(f.repulsive);
    o.family = oracle::Family::Exponential;
    o.amplitude = e.amplitude;
    o.sharpness = e.sharpness;
  }
  return o;
}

// Distance from p to the lines where a segment's Laplacian switches between
// the end-cap and strip forms.
double segment_seam_distance(const Point2& p, const std::vector<Obstacle>& obs) {
  double best = std::numeric_limits<double>::infinity();
  for (const Obstacle& o : obs) {
    const auto* s = std::get_if<SegmentObstacle>(&o);
    if (!s) continue;
    const Vec2 u = (s->b - s->a) / distance(s->a, s->b);
    best = std::min(best, std::abs((p - s->a).dot(u)));
    best = std::min(best, std::abs((p - s->b).dot(u)));
  }
  return best;
}

}  // namespace

TEST_SUITE("fields") {

TEST_CASE("attractive examples") {
  CHECK(attractive_potential({3, -2}, {3, -2}, 7.0) == 0.0);
  CHECK(attractive_potential({1, 1}, {0, 0}, 1.0) == doctest::Approx(2.0));
  CHECK(attractive_laplacian(1.0) == 4.0);
  const Vec2 g = attractive_gradient({1, 0}, {0, 0}, 1.0);
  CHECK(g.x == doctest::Approx(2.0));
  CHECK(g.y == doctest::Approx(0.0));

  const World empty = World(Bounds{{-3, -3}, {3, 3}}, {1, 0}, {0, 0}, {});
  const FieldSample s = field_sample({1, 0}, empty, FieldSpec{1.0, ExponentialGaussian{}, Aggregation::Superposition});
  CHECK(s.gradient.x == doctest::Approx(2.0));
  CHECK(s.laplacian == doctest::Approx(4.0));
}

TEST_CASE("repulsive potential examples") {
  const World single = world_with({PointObstacle{{0, 0}}});
  CHECK(repulsive_potential({0, 0}, single, ExponentialGaussian{1, 1}) == doctest::Approx(1.0));
  const World four = world_with(kFourPoints);
  CHECK(repulsive_potential({0, 0}, four, InverseDistance{1}) == doctest::Approx(4.0 / std::sqrt(2.0)));
  CHECK(repulsive_potential({0, 0}, four, LogDistance{1}) == doctest::Approx(-4.0 * std::log10(std::sqrt(2.0))));
  CHECK(repulsive_potential({0, 0}, four, InverseDistance{1}) == doctest::Approx(2.828427).epsilon(1e-6));
  CHECK(repulsive_potential({0, 0}, four, LogDistance{1}) == doctest::Approx(-0.602060).epsilon(1e-6));
}

TEST_CASE("nearest-obstacle aggregation uses only the clearance") {
  const World w = world_with({PointObstacle{{1, 0}}, PointObstacle{{-2, 0}}});
  CHECK(repulsive_potential({0, 0}, w, InverseDistance{1}, Aggregation::NearestObstacle) == doctest::Approx(1.0));
  CHECK(repulsive_potential({0, 0}, w, InverseDistance{1}) == doctest::Approx(1.5));
}

TEST_CASE("singular families refuse to evaluate at contact") {
  const World w = world_with({PointObstacle{{2, 2}}, PointObstacle{{0, 0}}});
  try {
    (void)field_sample({0, 0}, w, repulsive_only(InverseDistance{1}));
    FAIL("expected a singularity");
  } catch (const SingularityError& e) {
    CHECK(e.obstacle_index() == 1);
  }
  CHECK_THROWS_AS((void)field_sample({5e-7, 0}, w, repulsive_only(LogDistance{1})), SingularityError);
  CHECK_NOTHROW((void)field_sample({2e-6, 0}, w, repulsive_only(LogDistance{1})));
  CHECK_NOTHROW((void)field_sample({0, 0}, w, repulsive_only(ExponentialGaussian{1, 1})));
}

TEST_CASE("exponential gradient peak and danger boundary") {
  const World w = world_with({PointObstacle{{0, 0}}});
  const FieldSpec f = repulsive_only(ExponentialGaussian{1, 1});
  double best = 0.0, arg = 0.0;
  for (int i = 1; i <= 20000; ++i) {
    const double r = 3.0 * i / 20000.0;
    const double g = field_sample({r, 0}, w, f).gradient.norm();
    if (g > best) {
      best = g;
      arg = r;
    }
  }
  CHECK(best == doctest::Approx(std::sqrt(2.0 / std::numbers::e)).epsilon(1e-6));
  CHECK(arg == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-3));
  CHECK(std::abs(field_sample({1, 0}, w, f).laplacian) < 1e-12);
}

TEST_CASE("danger distance") {
  CHECK(danger_distance(ExponentialGaussian{1, 1}).value() == 1.0);
  CHECK(danger_distance(ExponentialGaussian{2, 4}).value() == 0.5);
  CHECK_FALSE(danger_distance(InverseDistance{}));
  CHECK_FALSE(danger_distance(LogDistance{}));
}

TEST_CASE("subharmonic_at examples") {
  const World w = world_with({PointObstacle{{0, 0}}});
  const FieldSpec f{0.5, ExponentialGaussian{1, 1}, Aggregation::Superposition};
  CHECK(subharmonic_at({2, 0}, w, f));
  CHECK_FALSE(subharmonic_at({0.5, 0}, w, f));
  const World empty = world_with({});
  CHECK(subharmonic_at({0.1, -1.7}, empty, f));
  CHECK(subharmonic_at({0.7, 0.2}, w, FieldSpec{0.5, InverseDistance{1}, Aggregation::Superposition}));
  CHECK(subharmonic_at({0.7, 0.2}, w, FieldSpec{0.5, LogDistance{1}, Aggregation::Superposition}));
  CHECK_FALSE(subharmonic_at({0, 0}, w, FieldSpec{0.5, InverseDistance{1}, Aggregation::Superposition}));
}

TEST_CASE("validation rejects non-positive parameters") {
  CHECK_THROWS_AS(validate(RepulsiveModel{InverseDistance{0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(validate(RepulsiveModel{LogDistance{-1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(validate(RepulsiveModel{ExponentialGaussian{1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(validate(FieldSpec{-0.1, ExponentialGaussian{}, Aggregation::Superposition}), std::invalid_argument);
  CHECK_NOTHROW(validate(FieldSpec{0.0, ExponentialGaussian{}, Aggregation::Superposition}));
}

TEST_CASE("potential and gradient agree with the closed-form oracle") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  std::uniform_real_distribution<double> par(0.1, 10.0);
  int checked = 0;
  while (checked < 600) {
    std::vector<Obstacle> obs;
    const int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) {
      switch (rng() % 3) {
        case 0: obs.push_back(PointObstacle{{pos(rng), pos(rng)}}); break;
        case 1: obs.push_back(CircleObstacle{{pos(rng), pos(rng)}, 0.1 + 0.5 * (pos(rng) + 3) / 6}); break;
        default: obs.push_back(SegmentObstacle{{pos(rng), pos(rng)}, {pos(rng), pos(rng)}}); break;
      }
    }
    const World w = world_with(obs, {pos(rng), pos(rng)});
    const RepulsiveModel models[] = {InverseDistance{par(rng)}, LogDistance{par(rng)},
                                     ExponentialGaussian{par(rng), par(rng)}};
    const FieldSpec spec{par(rng), models[checked % 3], Aggregation::Superposition};
    const Point2 p{pos(rng), pos(rng)};
    if (clearance_distance(p, w) < 0.05) continue;
    std::vector<oracle::Obs> oo;
    for (const Obstacle& o : obs) oo.push_back(to_oracle(o));
    const oracle::Field of = to_oracle(spec);
    const FieldSample s = field_sample(p, w, spec);
    const double u = oracle::potential(p, w.goal(), oo, of);
    CHECK(s.potential == doctest::Approx(u).epsilon(1e-12));
    const Vec2 g = oracle::gradient(p, w.goal(), oo, of);
    CHECK(std::abs(s.gradient.x - g.x) <= 1e-10 * std::max(1.0, g.norm()));
    CHECK(std::abs(s.gradient.y - g.y) <= 1e-10 * std::max(1.0, g.norm()));
    ++checked;
  }
}

TEST_CASE("property: analytic derivatives match finite differences") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  std::uniform_real_distribution<double> par(0.1, 10.0);
  int checked = 0;
  while (checked < 1000) {
    std::vector<Obstacle> obs;
    const int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) {
      switch (rng() % 3) {
        case 0: obs.push_back(PointObstacle{{pos(rng), pos(rng)}}); break;
        case 1: obs.push_back(CircleObstacle{{pos(rng), pos(rng)}, 0.1 + 0.1 * par(rng)}); break;
        default: obs.push_back(SegmentObstacle{{pos(rng), pos(rng)}, {pos(rng), pos(rng)}}); break;
      }
    }
    const World w = world_with(obs, {pos(rng), pos(rng)});
    const RepulsiveModel models[] = {InverseDistance{par(rng)}, LogDistance{par(rng)},
                                     ExponentialGaussian{par(rng), par(rng)}};
    const FieldSpec spec{par(rng), models[checked % 3], Aggregation::Superposition};
    const Point2 p{pos(rng), pos(rng)};
    if (clearance_distance(p, w) < 0.05) continue;
    if (segment_seam_distance(p, obs) < 2e-4) continue;
    std::vector<oracle::Obs> oo;
    for (const Obstacle& o : obs) oo.push_back(to_oracle(o));
    const oracle::Field of = to_oracle(spec);
    auto u = [&](const Vec2& q) { return oracle::potential(q, w.goal(), oo, of); };

    const FieldSample s = field_sample(p, w, spec);
    const Vec2 fd = oracle::fd_gradient(u, p, 1e-6);
    const double scale = std::max(1.0, s.gradient.norm());
    CHECK((s.gradient - fd).norm() / scale < 1e-5);
    const double lap = oracle::fd_laplacian(u, p, 1e-4);
    CHECK(std::abs(s.laplacian - lap) < 1e-4 * std::max(1.0, std::abs(s.laplacian)));
    ++checked;
  }
}

TEST_CASE("property: log field is harmonic around point obstacles") {
  const World w = world_with(kFourPoints);
  const FieldSpec f = repulsive_only(LogDistance{1});
  for (int j = 0; j <= 120; ++j) {
    for (int i = 0; i <= 120; ++i) {
      const Point2 p{-3.0 + 0.05 * i, -3.0 + 0.05 * j};
      if (clearance_distance(p, w) < 0.1) continue;
      CHECK(std::abs(field_sample(p, w, f).laplacian) < 1e-6);
    }
  }
}

TEST_CASE("property: exponential term Laplacian sign flips at the danger distance") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> k_dist(0.5, 20.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const ExponentialGaussian e{0.1 + 9.9 * unit(rng), k_dist(rng)};
    const double d0 = danger_distance(e).value();
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    const Vec2 dir{std::cos(angle), std::sin(angle)};
    const Obstacle o = PointObstacle{{0.3, -0.2}};
    const double outside = d0 * (1.0 + 4.0 * unit(rng));
    CHECK(repulsive_term(Point2{0.3, -0.2} + dir * outside, o, e).laplacian >= -1e-9);
    const double inside = d0 * (0.1 + 0.89 * unit(rng));
    CHECK(repulsive_term(Point2{0.3, -0.2} + dir * inside, o, e).laplacian < 0.0);
  }
}

TEST_CASE("property: superposition is exact") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const Obstacle a = PointObstacle{{pos(rng), pos(rng)}};
    const Obstacle b = CircleObstacle{{pos(rng), pos(rng)}, 0.3};
    const World w = world_with({a, b});
    const Point2 p{pos(rng), pos(rng)};
    if (clearance_distance(p, w) < 0.05) continue;
    for (const RepulsiveModel& m : {RepulsiveModel{InverseDistance{0.7}}, RepulsiveModel{LogDistance{1.3}},
                                    RepulsiveModel{ExponentialGaussian{2, 3}}}) {
      const FieldSample s = field_sample(p, w, repulsive_only(m));
      const FieldSample ta = repulsive_term(p, a, m, 0);
      const FieldSample tb = repulsive_term(p, b, m, 1);
      CHECK(s.potential == ta.potential + tb.potential);
      CHECK(s.gradient.x == ta.gradient.x + tb.gradient.x);
      CHECK(s.gradient.y == ta.gradient.y + tb.gradient.y);
      CHECK(s.laplacian == ta.laplacian + tb.laplacian);
    }
  }
}

TEST_CASE("property: gradient envelopes") {
  const World w = world_with({PointObstacle{{0.2, 0.1}}});
  for (const ExponentialGaussian e : {ExponentialGaussian{1, 1}, ExponentialGaussian{2, 4}, ExponentialGaussian{5, 0.3}}) {
    const double bound = e.amplitude * std::sqrt(2.0 * e.sharpness / std::numbers::e);
    for (const GridCell& c : field_grid(w, repulsive_only(e), 301)) CHECK(c.sample.gradient.norm() <= bound * (1 + 1e-12));
  }
  const World single = world_with({PointObstacle{{0, 0}}});
  for (const double eta : {0.1, 1.0, 7.0})
    CHECK(field_sample({1e-3, 0}, single, repulsive_only(InverseDistance{eta})).gradient.norm() > 1e5 * eta);
}

TEST_CASE("four-point grid: inverse has a minimum at the origin, log does not") {
  const World w = world_with(kFourPoints);
  auto inv = [&](double x, double y) { return repulsive_potential({x, y}, w, InverseDistance{1}); };
  auto lg = [&](double x, double y) { return repulsive_potential({x, y}, w, LogDistance{1}); };
  CHECK(inv(0, 0) == doctest::Approx(2.828427125).epsilon(1e-9));
  CHECK(inv(0.1, 0) == doctest::Approx(2.831933880).epsilon(1e-9));
  CHECK(lg(0, 0) == doctest::Approx(-0.602059991).epsilon(1e-9));
  CHECK(lg(0.1, 0) == doctest::Approx(-0.602070849).epsilon(1e-9));
  for (int dx = -1; dx <= 1; ++dx)
    for (int dy = -1; dy <= 1; ++dy)
      if (dx || dy) CHECK(inv(0, 0) < inv(0.1 * dx, 0.1 * dy));
  CHECK(lg(0.1, 0) < lg(0, 0));
  CHECK(lg(0, 0.1) < lg(0, 0));
  CHECK(lg(0.1, 0.1) > lg(0, 0));
}

TEST_CASE("field_grid layout and sentinel") {
  const World unit = World(Bounds{{0, 0}, {1, 1}}, {0.2, 0.2}, {0.8, 0.8}, {});
  const auto cells = field_grid(unit, FieldSpec{}, 2);
  REQUIRE(cells.size() == 4);
  CHECK(cells[0].position == Point2{0, 0});
  CHECK(cells[1].position == Point2{1, 0});
  CHECK(cells[2].position == Point2{0, 1});
  CHECK(cells[3].position == Point2{1, 1});
  CHECK_THROWS_AS(field_grid(unit, FieldSpec{}, 1), std::invalid_argument);

  const World four = world_with(kFourPoints);
  const auto grid = field_grid(four, repulsive_only(LogDistance{1}), 61);
  const GridCell& centre = grid[30 * 61 + 30];
  CHECK(centre.position.x == doctest::Approx(0.0));
  CHECK(centre.sample.potential == doctest::Approx(-0.602060).epsilon(1e-6));

  const auto singular = field_grid(four, repulsive_only(InverseDistance{1}), 7);
  int flagged = 0;
  for (const GridCell& c : singular) flagged += c.singular;
  CHECK(flagged == 4);
  CHECK(singular[4 * 7 + 4].singular);

  std::ostringstream csv;
  write_field_csv(csv, singular);
  std::string line;
  std::istringstream in(csv.str());
  std::getline(in, line);
  CHECK(line == "x,y,potential,grad_x,grad_y,laplacian,singular");
  int rows = 0, sentinel = 0;
  while (std::getline(in, line)) {
    ++rows;
    if (line.find("nan,nan,nan,nan,1") != std::string::npos) ++sentinel;
  }
  CHECK(rows == 49);
  CHECK(sentinel == 4);
}

}  // TEST_SUITE
