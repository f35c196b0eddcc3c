#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "linechase/chase_core.hpp"
#include "linechase/geometry.hpp"

namespace linechase {

/// Everything a planar step computed, for auditing. S is the intersection of
/// the previous and new line; P̄ is the projection of the current point onto
/// the new line; the move goes from P̄ a signed distance x toward S.
struct StepGeometry {
  bool intersecting = false;
  bool clockwise = false;  // the previous line rotates clockwise onto the new one
  std::optional<Point> S;
  double r = 0.0;  // |S - P|
  double h = 0.0;  // |P - P̄|
  double s = 0.0;  // |S - P̄|
  double x = 0.0;  // drift toward S, measured from P̄
  Point p_bar;
  Point p_new;
};

struct StepResult {
  Point point;
  StepGeometry geometry;
};

/// Drift magnitude as a multiple of h for a given a = h/s.
using BetaFunction = std::function<double(double)>;

/// A memoryless rts-oblivious planar policy given by its drift-to-height
/// ratios. Parallel lines always use the projection rule.
struct BetaPolicySpec {
  BetaFunction beta;      // clockwise rotations
  BetaFunction beta_ccw;  // counter-clockwise rotations
  std::string label;
};

/// One DRIFT move in the plane.
StepResult drift_step_2d(const Point& p, const std::optional<Line>& previous, const Line& request);

/// DRIFT carried out in the plane spanned by the request and the current point.
Point extended_drift_step(const Point& p, const std::optional<Line>& previous, const Line& request);

Point greedy_step(const Point& p, const Line& request);

/// DRIFT's drift ratio (a + 1 - sqrt(a^2 + 1)) / (sqrt(2) a).
double beta_of_drift(double a);

StepResult memoryless_step(const BetaPolicySpec& policy, const Point& p,
                           const std::optional<Line>& previous, const Line& request);

BetaPolicySpec drift_beta_policy();
BetaPolicySpec constant_beta_policy(double beta);

class DriftPolicy final : public OnlinePolicy {
 public:
  Point next(const PolicyState& state, const Line& request) const override;
  std::string name() const override { return "drift"; }
};

class ExtendedDriftPolicy final : public OnlinePolicy {
 public:
  Point next(const PolicyState& state, const Line& request) const override;
  std::string name() const override { return "extended-drift"; }
};

class GreedyPolicy final : public OnlinePolicy {
 public:
  Point next(const PolicyState& state, const Line& request) const override;
  std::string name() const override { return "greedy"; }
};

class BetaPolicy final : public OnlinePolicy {
 public:
  explicit BetaPolicy(BetaPolicySpec spec) : spec_(std::move(spec)) {}
  Point next(const PolicyState& state, const Line& request) const override;
  std::string name() const override { return spec_.label; }
  const BetaPolicySpec& spec() const { return spec_; }

 private:
  BetaPolicySpec spec_;
};

class UnknownPolicy : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Builds a policy from "drift", "extended-drift", "greedy", "beta:drift" or
/// "beta:const:<v>". Throws UnknownPolicy listing the valid names.
std::unique_ptr<OnlinePolicy> make_policy(const std::string& name);

std::vector<std::string> policy_names();

}  // namespace linechase
