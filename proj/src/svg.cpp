#include "apf/svg.hpp"

#include <sstream>

#include "apf/format.hpp"

namespace apf {
namespace {

// SVG y grows downwards; world y is negated on output.
std::string xy(const Point2& p) { return format_number(p.x) + "," + format_number(-p.y); }

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void circle(std::ostream& o, const Point2& c, double r, const char* cls) {
  o << "  <circle class=\"" << cls << "\" cx=\"" << format_number(c.x) << "\" cy=\"" << format_number(-c.y)
    << "\" r=\"" << format_number(r) << "\"/>\n";
}

// Outline of all points within `r` of segment ab.
void capsule(std::ostream& o, const Point2& a, const Point2& b, double r) {
  const Vec2 d = (b - a) / distance(a, b);
  const Vec2 n{-d.y, d.x};
  const std::string rr = format_number(r);
  o << "  <path class=\"danger\" d=\"M" << xy(a + n * r) << " L" << xy(b + n * r) << " A" << rr << "," << rr
    << " 0 0 0 " << xy(b - n * r) << " L" << xy(a - n * r) << " A" << rr << "," << rr << " 0 0 0 "
    << xy(a + n * r) << " Z\"/>\n";
}

}  // namespace

std::string render_svg(const Trajectory& t, const World& w, const SvgOptions& options) {
  const Bounds& b = w.bounds();
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(b.width() * options.pixels_per_meter)
    << "\" height=\"" << format_number(b.height() * options.pixels_per_meter) << "\" viewBox=\""
    << format_number(b.min.x) << ' ' << format_number(-b.max.y) << ' ' << format_number(b.width()) << ' '
    << format_number(b.height()) << "\">\n";
  if (!options.title.empty()) o << "  <title>" << escape(options.title) << "</title>\n";
  o << "  <style>\n"
       "    .bounds { fill: #ffffff; stroke: #000000; stroke-width: 0.02; }\n"
       "    .obstacle { fill: #555555; stroke: #555555; stroke-width: 0.04; }\n"
       "    .danger { fill: none; stroke: #cc3333; stroke-width: 0.015; stroke-dasharray: 0.06 0.04; }\n"
       "    .path { fill: none; stroke: #1f5fbf; stroke-width: 0.025; stroke-linejoin: round; }\n"
       "    .start { fill: #2a9d2a; }\n"
       "    .goal { fill: #d98c00; }\n"
       "  </style>\n";
  o << "  <rect class=\"bounds\" x=\"" << format_number(b.min.x) << "\" y=\"" << format_number(-b.max.y)
    << "\" width=\"" << format_number(b.width()) << "\" height=\"" << format_number(b.height()) << "\"/>\n";

  const double danger = options.danger_distance.value_or(0.0);
  for (const Obstacle& ob : w.obstacles()) {
    if (const auto* p = std::get_if<PointObstacle>(&ob)) {
      circle(o, p->center, 0.04, "obstacle");
      if (danger > 0.0) circle(o, p->center, danger, "danger");
    } else if (const auto* c = std::get_if<CircleObstacle>(&ob)) {
      circle(o, c->center, c->radius, "obstacle");
      if (danger > 0.0) circle(o, c->center, c->radius + danger, "danger");
    } else if (const auto* s = std::get_if<SegmentObstacle>(&ob)) {
      o << "  <line class=\"obstacle\" x1=\"" << format_number(s->a.x) << "\" y1=\"" << format_number(-s->a.y)
        << "\" x2=\"" << format_number(s->b.x) << "\" y2=\"" << format_number(-s->b.y) << "\"/>\n";
      if (danger > 0.0) capsule(o, s->a, s->b, danger);
    }
  }

  o << "  <polyline class=\"path\" points=\"";
  for (std::size_t i = 0; i < t.steps.size(); ++i) o << (i ? " " : "") << xy(t.steps[i].position);
  o << "\"/>\n";
  circle(o, w.start(), 0.08, "start");
  circle(o, w.goal(), 0.08, "goal");
  o << "</svg>\n";
  return o.str();
}

}  // namespace apf
