#include "linechase/adversaries.hpp"

#include <cmath>
#include <numbers>

namespace linechase {

namespace {

Point xy(double x, double y) { return Eigen::Vector2d(x, y); }

// Point of `line` (not vertical) with the given x-coordinate.
Point at_x(const Line& line, double x) {
  return line.at((x - line.base()(0)) / line.dir()(0));
}

Point mirror_point(const Point& p) { return xy(-p(0), p(1)); }
Line mirror_line(const Line& l) { return Line(mirror_point(l.base()), mirror_point(l.dir())); }

// The adversary walks the straight segment from `from` to `target`, meeting
// each line where the segment crosses it (or sitting at `target` once the
// line passes through it).
std::vector<Point> segment_walk(const Point& from, const Point& target,
                                const std::vector<Line>& lines) {
  std::vector<Point> out{from};
  const Line segment = Line::through(from, target);
  for (const auto& line : lines) {
    if (distance(target, project_point_onto_line(target, line)) <= feasibility_tol(target)) {
      out.push_back(target);
      continue;
    }
    const auto cross = intersect_lines_2d(segment, line);
    if (!cross) throw std::logic_error("segment_walk: adversary segment misses a request line");
    out.push_back(*cross);
  }
  return out;
}

Line rotated_line(const Point& pivot, double angle) {
  return Line(pivot, xy(std::cos(angle), std::sin(angle)));
}

}  // namespace

ThreeLineGeometry three_line_geometry(const ArbitraryLBConstants& k) {
  ThreeLineGeometry g;
  g.P0 = xy(0.0, 0.0);
  g.P1 = xy(0.0, k.c1);
  g.C2 = xy(0.0, k.c1 + k.c2);
  g.C3 = xy(0.0, k.c1 + k.c2 + k.c3);
  g.A3 = xy(1.0, k.c1);
  g.L1 = Line::through(g.P1, g.A3);
  g.L2 = Line::through(g.C2, g.A3);
  g.L3 = Line::through(g.C3, g.A3);
  // L1 is horizontal: projecting onto it keeps the x-coordinate.
  g.P2 = at_x(g.L2, 1.0 - k.p2);
  g.A1 = at_x(g.L2, 1.0 - k.a1);
  g.A2 = at_x(g.L3, 1.0 - k.a2);
  g.P3 = at_x(g.L3, 1.0 - k.p3);
  const auto cut = intersect_lines_2d(Line::through(g.P1, g.P2), g.L3);
  if (!cut) throw InvalidInput("three_line_geometry: line P1P2 is parallel to L3");
  g.P2_cut = *cut;
  return g;
}

ThreeLineBounds three_line_bounds(const ArbitraryLBConstants& k) {
  const ThreeLineGeometry g = three_line_geometry(k);
  const double d01 = distance(g.P0, g.P1);
  const double d12 = distance(g.P1, g.P2);
  const double d23 = distance(g.P2, g.P3);
  ThreeLineBounds b;
  b.adv_a1 = distance(g.P0, g.A1);
  b.alg_a1 = d01 + d12 + distance(g.A3, g.A1) - distance(g.A3, g.P2);
  b.adv_a3 = distance(g.P0, g.A3);
  b.alg_a3 = d01 + d12 + d23 + distance(g.P3, g.A3);
  b.adv_a2 = distance(g.P0, g.A2);
  b.alg_a2 = d01 + d12 + d23 + distance(g.A2, g.A3) - distance(g.P3, g.A3);
  return b;
}

double forcing_angle(int j) {
  const double x = j * (std::numbers::phi - 1.0);
  return std::numbers::pi * (x - std::floor(x));
}

AdversarySession::AdversarySession(const OnlinePolicy& policy, Point start,
                                   std::optional<Line> initial_line)
    : policy_(policy), state_{std::move(start), std::move(initial_line)} {
  points_.push_back(state_.current);
}

const Point& AdversarySession::issue(const Line& line) {
  Point next = policy_.next(state_, line);
  if (distance(next, project_point_onto_line(next, line)) > feasibility_tol(next)) {
    throw ContractViolation(policy_.name() + " left the request line at step " +
                                std::to_string(lines_.size() + 1),
                            lines_.size() + 1);
  }
  lines_.push_back(line);
  points_.push_back(next);
  state_.current = std::move(next);
  state_.previous_line = line;
  return state_.current;
}

bool AdversarySession::force_to_point(const Point& target, const ForceConfig& cfg) {
  if (cfg.k < 1 || !(cfg.stop_radius > 0.0)) {
    throw InvalidInput("force_to_point: need k >= 1 and stop_radius > 0");
  }
  for (int j = 1; j <= cfg.k; ++j) {
    const double angle = forcing_angle(j);
    issue(Line(target, xy(std::cos(angle), std::sin(angle))));
    if (distance(current(), target) <= cfg.stop_radius) return true;
  }
  return false;
}

AdversaryTranscript AdversarySession::finish(std::vector<Point> adversary_points,
                                             std::string branch, bool force_complete) const {
  if (adversary_points.size() != points_.size()) {
    throw std::logic_error("adversary path length does not match the request count");
  }
  for (std::size_t t = 1; t < adversary_points.size(); ++t) {
    const Point& a = adversary_points[t];
    if (distance(a, project_point_onto_line(a, lines_[t - 1])) > feasibility_tol(a)) {
      throw std::logic_error("adversary point " + std::to_string(t) + " is off its line");
    }
  }
  AdversaryTranscript out;
  out.lines = lines_;
  out.alg_points = points_;
  out.adversary_points = std::move(adversary_points);
  out.alg_cost = path_cost(out.alg_points);
  out.adv_cost = path_cost(out.adversary_points);
  out.ratio = ratio_of(out.alg_cost, out.adv_cost);
  out.branch = std::move(branch);
  out.force_complete = force_complete;
  return out;
}

AdversaryTranscript arbitrary_lb_adversary(const OnlinePolicy& policy,
                                           const ArbitraryLBConstants& constants,
                                           const ForceConfig& force) {
  const ThreeLineGeometry g = three_line_geometry(constants);
  AdversarySession session(policy, g.P0);

  const Point& on_l1 = session.issue(g.L1);
  const bool mirrored = on_l1(0) < 0.0;
  auto place = [mirrored](const Point& p) { return mirrored ? mirror_point(p) : p; };
  auto place_line = [mirrored](const Line& l) { return mirrored ? mirror_line(l) : l; };

  std::string branch;
  Point target;
  // Region tests run in unmirrored coordinates, where x is the projection onto L1.
  const Point on_l2 = place(session.issue(place_line(g.L2)));
  if (on_l2(0) > g.P2(0)) {
    branch = "force-A1";
    target = g.A1;
  } else {
    const Point on_l3 = place(session.issue(place_line(g.L3)));
    if (on_l3(0) <= g.P3(0)) {
      branch = "force-A3";
      target = g.A3;
    } else {
      branch = "force-A2";
      target = g.A2;
    }
  }
  const Point placed_target = place(target);
  const bool reached = session.force_to_point(placed_target, force);
  if (mirrored) branch += "-mirrored";
  if (!reached) branch += " force-incomplete";
  return session.finish(segment_walk(g.P0, placed_target, session.lines()), branch, reached);
}

Point memoryless_main_pivot(double a, double p1_x) {
  const double beta_hat = 1.0 / a - p1_x;
  return xy(p1_x + std::sqrt(1.0 + a * a) * (beta_hat + 1.0 / (2.0 * beta_hat)), 0.0);
}

std::vector<Line> memoryless_main_lines(double a, int m, double p1_x) {
  if (!(a > 0.0) || m < 2) throw InvalidInput("memoryless_main_lines: need a > 0 and m >= 2");
  const Point pivot = memoryless_main_pivot(a, p1_x);
  const double step = std::atan(a);
  std::vector<Line> lines;
  lines.reserve(static_cast<std::size_t>(m));
  for (int t = 1; t <= m; ++t) lines.push_back(rotated_line(pivot, -(t - 1) * step));
  return lines;
}

AdversaryTranscript memoryless_lb_main(const OnlinePolicy& policy, double a, int m) {
  if (!(a > 0.0) || m < 2) throw InvalidInput("memoryless_lb_main: need a > 0 and m >= 2");
  const Point start = xy(1.0 / a, 1.0);
  const Line l0(xy(0.0, 0.0), xy(1.0, a));
  AdversarySession session(policy, start, l0);

  const Line x_axis(xy(0.0, 0.0), xy(1.0, 0.0));
  const double p1_x = session.issue(x_axis)(0);
  const double beta_hat = 1.0 / a - p1_x;
  if (!(beta_hat > 0.0) || beta_hat * a >= 1.0) {
    AdversaryTranscript fallback = memoryless_lb_rotation(policy, a, m);
    fallback.branch = "memoryless-main-fallback-rotation";
    return fallback;
  }

  const std::vector<Line> lines = memoryless_main_lines(a, m, p1_x);
  for (std::size_t t = 1; t < lines.size(); ++t) session.issue(lines[t]);
  const Point pivot = memoryless_main_pivot(a, p1_x);
  std::vector<Point> adversary(static_cast<std::size_t>(m) + 1, pivot);
  adversary.front() = start;
  return session.finish(std::move(adversary), "memoryless-main");
}

Instance memoryless_lb_rotation_instance(double a, int m) {
  if (!(a > 0.0 && a < 1.0) || m < 1) {
    throw InvalidInput("memoryless_lb_rotation: need 0 < a < 1 and m >= 1");
  }
  Instance inst;
  inst.start = xy(1.0, 0.0);
  inst.initial_line = Line(xy(0.0, 0.0), xy(1.0, 0.0));
  const double step = std::atan(a);
  for (int t = 1; t <= m; ++t) inst.requests.push_back(rotated_line(xy(0.0, 0.0), -t * step));
  return inst;
}

AdversaryTranscript memoryless_lb_rotation(const OnlinePolicy& policy, double a, int m) {
  const Instance inst = memoryless_lb_rotation_instance(a, m);
  AdversarySession session(policy, inst.start, inst.initial_line);
  for (const auto& line : inst.requests) session.issue(line);
  std::vector<Point> adversary(inst.requests.size() + 1, xy(0.0, 0.0));
  adversary.front() = inst.start;
  return session.finish(std::move(adversary), "memoryless-rotation");
}

Instance memoryless_lb_single_step_instance(double h) {
  if (!(h > 0.0)) throw InvalidInput("memoryless_lb_single_step: need h > 0");
  Instance inst;
  inst.start = xy(1.0, h);
  inst.initial_line = Line(xy(0.0, 0.0), xy(1.0, h));
  inst.requests.push_back(Line(xy(0.0, 0.0), xy(1.0, 0.0)));
  return inst;
}

AdversaryTranscript memoryless_lb_single_step(const OnlinePolicy& policy, double h) {
  const Instance inst = memoryless_lb_single_step_instance(h);
  AdversarySession session(policy, inst.start, inst.initial_line);
  session.issue(inst.requests.front());
  return session.finish({inst.start, xy(1.0, 0.0)}, "memoryless-single");
}

double theoretical_memoryless_ratio(double b0) {
  if (!(b0 > 0.0)) throw InvalidInput("theoretical_memoryless_ratio: need b0 > 0");
  return std::sqrt(4.0 * b0 * b0 + 1.0 / (b0 * b0) + 5.0);
}

}  // namespace linechase
