#include "linechase/policies.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

namespace linechase {

namespace {

using DriftRule = std::function<double(double h, double s, double r, bool clockwise)>;

StepResult project_only(const Point& p, const Line& request, bool zero_move) {
  StepResult out;
  out.geometry.p_bar = project_point_onto_line(p, request);
  out.geometry.h = distance(p, out.geometry.p_bar);
  out.point = zero_move ? p : out.geometry.p_bar;
  out.geometry.p_new = out.point;
  return out;
}

// Shared branch structure of every planar memoryless policy: no move when
// already on the request, projection when there is no usable intersection,
// otherwise a signed drift x from P̄ toward S.
StepResult planar_step(const Point& p, const std::optional<Line>& previous, const Line& request,
                       const DriftRule& rule) {
  if (p.size() != 2 || request.dim() != 2) {
    throw InvalidInput("planar step: expected 2-dimensional inputs");
  }
  const Point p_bar = project_point_onto_line(p, request);
  const double h = distance(p, p_bar);
  if (h <= degeneracy_tol(p)) return project_only(p, request, true);
  if (!previous) return project_only(p, request, false);

  const auto S = intersect_lines_2d(*previous, request);
  if (!S) return project_only(p, request, false);

  StepResult out;
  StepGeometry& g = out.geometry;
  g.intersecting = true;
  g.S = *S;
  g.p_bar = p_bar;
  g.h = h;
  // S and P̄ both lie on the request, so s is a difference of line parameters
  // and r follows from the right angle at P̄.
  const double offset = request.param_of(p_bar) - request.param_of(*S);
  g.s = std::abs(offset);
  g.r = std::hypot(g.h, g.s);
  g.clockwise = cross_2d(p - *S, p_bar - *S) < 0.0;
  g.x = rule(g.h, g.s, g.r, g.clockwise);

  if (g.s == 0.0) {
    g.x = 0.0;
    g.p_new = p_bar;
  } else {
    // Step back from P̄ rather than out from S: S may be far away when the
    // lines are nearly parallel, and its rounding error would leave the line.
    const Vector axis = offset > 0.0 ? request.dir() : Vector(-request.dir());
    g.p_new = p_bar - g.x * axis;
  }
  out.point = g.p_new;
  return out;
}

double drift_amount(double h, double s, double r) {
  // (h + s - r) / sqrt2 with r - s = h^2 / (r + s), stable for h << s.
  return (h - h * h / (r + s)) / std::numbers::sqrt2;
}

}  // namespace

StepResult drift_step_2d(const Point& p, const std::optional<Line>& previous, const Line& request) {
  return planar_step(p, previous, request,
                     [](double h, double s, double r, bool) { return drift_amount(h, s, r); });
}

Point extended_drift_step(const Point& p, const std::optional<Line>& previous, const Line& request) {
  require_same_dim(p, request.base(), "extended_drift_step");
  const Point p_bar = project_point_onto_line(p, request);
  if (distance(p, p_bar) <= degeneracy_tol(p)) return p;
  if (!previous) return p_bar;

  const Plane plane = plane_through_line_and_point(request, p);
  const auto previous_in_plane = project_line_onto_plane(*previous, plane);
  if (!previous_in_plane) return p_bar;

  const Point local_p = plane.to_local(p);
  const Line local_request(plane.to_local(request.base()), Eigen::Vector2d(1.0, 0.0));
  const StepResult step = drift_step_2d(local_p, previous_in_plane, local_request);
  // The in-plane result sits on the local x-axis; snap its second coordinate.
  return plane.to_global(Eigen::Vector2d(step.point(0), 0.0));
}

Point greedy_step(const Point& p, const Line& request) { return project_point_onto_line(p, request); }

double beta_of_drift(double a) {
  if (!(a > 0.0)) throw InvalidInput("beta_of_drift: a must be positive");
  // 1 - sqrt(a^2+1) = -a^2 / (1 + sqrt(a^2+1)); avoids cancellation for small a.
  const double root = std::sqrt(a * a + 1.0);
  return (1.0 - a / (1.0 + root)) / std::numbers::sqrt2;
}

StepResult memoryless_step(const BetaPolicySpec& policy, const Point& p,
                           const std::optional<Line>& previous, const Line& request) {
  return planar_step(p, previous, request, [&](double h, double s, double, bool clockwise) {
    if (s == 0.0) return 0.0;
    const double a = h / s;
    return h * (clockwise ? policy.beta(a) : policy.beta_ccw(a));
  });
}

BetaPolicySpec drift_beta_policy() {
  return {beta_of_drift, beta_of_drift, "beta:drift"};
}

BetaPolicySpec constant_beta_policy(double beta) {
  auto f = [beta](double) { return beta; };
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), beta);
  return {f, f, "beta:const:" + std::string(buf, res.ptr)};
}

Point DriftPolicy::next(const PolicyState& state, const Line& request) const {
  return drift_step_2d(state.current, state.previous_line, request).point;
}

Point ExtendedDriftPolicy::next(const PolicyState& state, const Line& request) const {
  return extended_drift_step(state.current, state.previous_line, request);
}

Point GreedyPolicy::next(const PolicyState& state, const Line& request) const {
  return greedy_step(state.current, request);
}

Point BetaPolicy::next(const PolicyState& state, const Line& request) const {
  return memoryless_step(spec_, state.current, state.previous_line, request).point;
}

std::vector<std::string> policy_names() {
  return {"drift", "extended-drift", "greedy", "beta:drift", "beta:const:<v>"};
}

std::unique_ptr<OnlinePolicy> make_policy(const std::string& name) {
  if (name == "drift") return std::make_unique<DriftPolicy>();
  if (name == "extended-drift") return std::make_unique<ExtendedDriftPolicy>();
  if (name == "greedy") return std::make_unique<GreedyPolicy>();
  if (name == "beta:drift") return std::make_unique<BetaPolicy>(drift_beta_policy());

  constexpr std::string_view kConst = "beta:const:";
  if (name.starts_with(kConst)) {
    const std::string_view value = std::string_view(name).substr(kConst.size());
    double beta = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), beta);
    if (res.ec == std::errc() && res.ptr == value.data() + value.size() && std::isfinite(beta)) {
      return std::make_unique<BetaPolicy>(constant_beta_policy(beta));
    }
  }

  std::string msg = "unknown policy '" + name + "'; valid names:";
  for (const auto& n : policy_names()) msg += " " + n;
  throw UnknownPolicy(msg);
}

}  // namespace linechase
