#include "linechase/chase_core.hpp"

#include <algorithm>
#include <limits>

namespace linechase {

void Instance::validate() const {
  if (start.size() < 2) throw InvalidInput("instance: dimension must be at least 2");
  if (!start.allFinite()) throw InvalidInput("instance: start point has non-finite coordinates");
  if (initial_line) {
    require_same_dim(start, initial_line->base(), "instance initial_line");
    if (!point_on_line(start, *initial_line)) {
      throw InvalidInput("instance: start point does not lie on the initial line");
    }
  }
  for (std::size_t t = 0; t < requests.size(); ++t) {
    if (requests[t].dim() != start.size()) {
      throw InvalidInput("instance: request " + std::to_string(t + 1) +
                         " has dimension " + std::to_string(requests[t].dim()) +
                         ", expected " + std::to_string(start.size()));
    }
  }
}

double Instance::diameter() const {
  double d = 0.0;
  for (const auto& line : requests) d = std::max(d, (line.base() - start).norm());
  if (initial_line) d = std::max(d, (initial_line->base() - start).norm());
  return d;
}

double path_cost(std::span<const Point> points) {
  if (points.empty()) throw InvalidInput("path_cost: empty point list");
  double cost = 0.0;
  for (std::size_t t = 1; t < points.size(); ++t) cost += distance(points[t - 1], points[t]);
  return cost;
}

Path run_policy(const OnlinePolicy& policy, const Instance& instance) {
  instance.validate();
  Path path;
  path.points.reserve(instance.requests.size() + 1);
  path.points.push_back(instance.start);

  PolicyState state{instance.start, instance.initial_line};
  for (std::size_t t = 0; t < instance.requests.size(); ++t) {
    const Line& request = instance.requests[t];
    Point next = policy.next(state, request);
    if (next.size() != instance.dim() || !next.allFinite()) {
      throw ContractViolation(policy.name() + " returned an invalid point at step " +
                                  std::to_string(t + 1), t + 1);
    }
    const double off = distance(next, project_point_onto_line(next, request));
    if (off > feasibility_tol(next)) {
      throw ContractViolation(policy.name() + " left the request line at step " +
                                  std::to_string(t + 1) + " (off by " + std::to_string(off) + ")",
                              t + 1);
    }
    path.cost += distance(state.current, next);
    path.points.push_back(next);
    state.current = std::move(next);
    state.previous_line = request;
  }
  return path;
}

double ratio_of(double cost, double opt_cost) {
  if (opt_cost > 0.0) return cost / opt_cost;
  return cost > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
}

double competitive_ratio(const OnlinePolicy& policy, const Instance& instance, double opt_cost) {
  if (opt_cost < 0.0) throw InvalidInput("competitive_ratio: negative optimum cost");
  return ratio_of(run_policy(policy, instance).cost, opt_cost);
}

Instance transform_instance(const DirectSimilarity& f, const Instance& instance) {
  Instance out;
  out.start = f(instance.start);
  if (instance.initial_line) out.initial_line = f(*instance.initial_line);
  out.requests.reserve(instance.requests.size());
  for (const auto& line : instance.requests) out.requests.push_back(f(line));
  return out;
}

}  // namespace linechase
