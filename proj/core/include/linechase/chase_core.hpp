#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "linechase/geometry.hpp"

namespace linechase {

/// A policy returned a point that is not on the requested line.
class ContractViolation : public std::runtime_error {
 public:
  ContractViolation(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Start point plus the ordered request lines. The optional initial line
/// must contain the start point.
struct Instance {
  Point start;
  std::optional<Line> initial_line;
  std::vector<Line> requests;

  Eigen::Index dim() const { return start.size(); }

  /// Throws InvalidInput if dimensions disagree, d < 2, coordinates are not
  /// finite, or the start point is off the initial line.
  void validate() const;

  /// Largest distance between the start point and any request base point.
  double diameter() const;
};

struct Path {
  std::vector<Point> points;
  double cost = 0.0;
};

/// The full memory of a memoryless policy: where it is and the last line.
struct PolicyState {
  Point current;
  std::optional<Line> previous_line;
};

/// An online line-chasing policy. `next` must return a point on `request`.
class OnlinePolicy {
 public:
  virtual ~OnlinePolicy() = default;
  virtual Point next(const PolicyState& state, const Line& request) const = 0;
  virtual std::string name() const = 0;
};

double path_cost(std::span<const Point> points);

/// Tolerance used when checking that a visit point lies on its request.
inline double feasibility_tol(const Point& p) { return 1e-9 * (1.0 + p.norm()); }

Path run_policy(const OnlinePolicy& policy, const Instance& instance);

/// cost / opt_cost, with 0/0 = 1 and x/0 = +inf for x > 0.
double ratio_of(double cost, double opt_cost);

double competitive_ratio(const OnlinePolicy& policy, const Instance& instance, double opt_cost);

Instance transform_instance(const DirectSimilarity& f, const Instance& instance);

}  // namespace linechase
