#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "linechase/chase_core.hpp"
#include "linechase/geometry.hpp"

namespace linechase {

struct SolverConfig {
  /// Per-sweep objective improvement threshold; <= 0 means 1e-12 * (1 + initial objective).
  double tol = 0.0;
  int max_sweeps = 100000;
  int restarts = 3;
  double certificate_tol = 1e-7;
  std::uint64_t seed = 0x5eed;

  void validate() const;
};

struct OptResult {
  Path path;
  bool converged = false;
  int sweeps_used = 0;
  double certificate_residual = 0.0;
  /// Objective after the warm start and after each coordinate sweep of the best restart.
  std::vector<double> objective_trace;
  /// Best objective reached by each restart.
  std::vector<double> restart_objectives;
};

/// Minimum-length path P0, P1 in X1, ..., Pm in Xm.
///
/// Each restart first solves a smoothed problem, sum of sqrt(|e|^2 + eps^2)
/// over edges, by Newton's method on the line parameters (the Hessian is
/// tridiagonal) with eps driven toward zero. Block-coordinate sweeps with
/// minimize_on_line then polish the exact objective until a sweep improves
/// it by less than cfg.tol. The objective is convex, so the restarts agree.
OptResult solve_offline(const Instance& instance, const SolverConfig& cfg = {});

/// argmin over Q on `line` of |A - Q| + |Q - B| (or |A - Q| without B).
///
/// Golden-section search on the line parameter over a bracket holding both
/// projections, then bisection on the sign of the one-sided derivative once
/// function comparisons stop resolving the minimum.
Point minimize_on_line(const Line& line, const Point& a, const std::optional<Point>& b);

/// Largest first-order stationarity violation of a feasible path.
double check_first_order(const Path& path, const Instance& instance);

}  // namespace linechase
