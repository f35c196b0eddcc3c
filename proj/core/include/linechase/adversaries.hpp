#pragma once

#include <string>
#include <vector>

#include "linechase/chase_core.hpp"
#include "linechase/geometry.hpp"

namespace linechase {

/// Constants of the three-line construction against arbitrary algorithms.
struct ArbitraryLBConstants {
  double c1 = 0.5535;
  double c2 = 0.4965;
  double c3 = 0.8743;
  double a1 = 1.3012;
  double a2 = 0.6663;
  double p2 = 0.5612;
  double p3 = 0.1696;
};

/// Points and lines of the three-line construction, unmirrored. The first line
/// is horizontal, so "projected distance to A3" is a difference of x-coordinates.
struct ThreeLineGeometry {
  Point P0, P1, C2, C3, A3;
  Line L1, L2, L3;
  Point P2, A1;          // on L2
  Point A2, P3, P2_cut;  // on L3; P2_cut is line P1P2 meeting L3
};

ThreeLineGeometry three_line_geometry(const ArbitraryLBConstants& k = {});

/// The six quantities bounding the three branches: adversary cost (upper
/// bound) and algorithm cost (lower bound) for each forced target.
struct ThreeLineBounds {
  double adv_a1 = 0.0, alg_a1 = 0.0;
  double adv_a3 = 0.0, alg_a3 = 0.0;
  double adv_a2 = 0.0, alg_a2 = 0.0;

  double ratio_a1() const { return alg_a1 / adv_a1; }
  double ratio_a3() const { return alg_a3 / adv_a3; }
  double ratio_a2() const { return alg_a2 / adv_a2; }
};

/// Evaluates the branch bounds as path lengths over the constructed points.
ThreeLineBounds three_line_bounds(const ArbitraryLBConstants& k = {});

struct ForceConfig {
  int k = 500;
  double stop_radius = 1e-4;
};

/// Angle of the j-th forcing line (j >= 1): pi * frac(j / golden ratio).
double forcing_angle(int j);

struct AdversaryTranscript {
  std::vector<Line> lines;
  std::vector<Point> alg_points;        // P0 first, then one per line
  std::vector<Point> adversary_points;  // A0 first, then one per line
  double alg_cost = 0.0;
  double adv_cost = 0.0;
  double ratio = 0.0;
  std::string branch;
  bool force_complete = true;
};

/// Drives a policy through an adaptively chosen request sequence and records both paths.
class AdversarySession {
 public:
  AdversarySession(const OnlinePolicy& policy, Point start, std::optional<Line> initial_line = {});

  /// Issues a request; returns the policy's new point.
  const Point& issue(const Line& line);
  const Point& current() const { return state_.current; }
  const PolicyState& state() const { return state_; }
  const std::vector<Line>& lines() const { return lines_; }
  const std::vector<Point>& points() const { return points_; }

  /// Issues up to cfg.k lines through `target`, stopping once the policy is
  /// within cfg.stop_radius of it. Returns true if it got there.
  bool force_to_point(const Point& target, const ForceConfig& cfg);

  /// Closes the run. `adversary_points[t]` must lie on line t.
  AdversaryTranscript finish(std::vector<Point> adversary_points, std::string branch,
                             bool force_complete = true) const;

 private:
  const OnlinePolicy& policy_;
  PolicyState state_;
  std::vector<Line> lines_;
  std::vector<Point> points_;
};

/// The three-line adversary against an arbitrary planar policy starting at the origin.
AdversaryTranscript arbitrary_lb_adversary(const OnlinePolicy& policy,
                                           const ArbitraryLBConstants& constants = {},
                                           const ForceConfig& force = {});

/// Pivot of the clockwise rotations in the main memoryless construction after
/// the policy answered the first request at (p1_x, 0).
Point memoryless_main_pivot(double a, double p1_x);

/// Requests L1..Lm of the main construction: the x-axis, then successive
/// clockwise rotations by arctan(a) about the pivot.
std::vector<Line> memoryless_main_lines(double a, int m, double p1_x);

/// Runs the main memoryless construction adaptively. Falls back to the
/// rotation construction when the observed first drift is not in (0, 1/a).
AdversaryTranscript memoryless_lb_main(const OnlinePolicy& policy, double a, int m);

/// P0 = (1,0) on the x-axis, then m clockwise rotations by arctan(a) about the origin.
Instance memoryless_lb_rotation_instance(double a, int m);
AdversaryTranscript memoryless_lb_rotation(const OnlinePolicy& policy, double a, int m);

/// P0 = (1,h) on y = hx followed by the x-axis. Optimum cost is h.
Instance memoryless_lb_single_step_instance(double h);
AdversaryTranscript memoryless_lb_single_step(const OnlinePolicy& policy, double h);

/// sqrt(4 b^2 + 1/b^2 + 5): limiting ratio forced on a memoryless policy with beta(0) = b.
double theoretical_memoryless_ratio(double b0);

}  // namespace linechase
