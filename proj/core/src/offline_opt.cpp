#include "linechase/offline_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace linechase {

namespace {

// Points are Q_i = base_i + tau_i * dir_i for request i; Q_{-1} is the start.
struct Problem {
  const Instance& instance;

  std::size_t size() const { return instance.requests.size(); }
  Point point(const std::vector<double>& tau, std::ptrdiff_t i) const {
    if (i < 0) return instance.start;
    return instance.requests[static_cast<std::size_t>(i)].at(tau[static_cast<std::size_t>(i)]);
  }
  std::vector<Point> points(const std::vector<double>& tau) const {
    std::vector<Point> out;
    out.reserve(size() + 1);
    out.push_back(instance.start);
    for (std::size_t i = 0; i < size(); ++i) out.push_back(instance.requests[i].at(tau[i]));
    return out;
  }
  double objective(const std::vector<double>& tau) const { return path_cost(points(tau)); }
  double smoothed(const std::vector<double>& tau, double eps) const {
    double f = 0.0;
    Point prev = instance.start;
    for (std::size_t i = 0; i < size(); ++i) {
      Point cur = instance.requests[i].at(tau[i]);
      f += std::sqrt((cur - prev).squaredNorm() + eps * eps);
      prev = std::move(cur);
    }
    return f;
  }
};

std::vector<double> greedy_params(const Problem& problem) {
  std::vector<double> tau(problem.size());
  Point cur = problem.instance.start;
  for (std::size_t i = 0; i < problem.size(); ++i) {
    const Line& line = problem.instance.requests[i];
    tau[i] = line.param_of(cur);
    cur = line.at(tau[i]);
  }
  return tau;
}

// Solves the symmetric tridiagonal system (diag, off) x = rhs in place (Thomas).
bool solve_tridiagonal(std::vector<double> diag, const std::vector<double>& off,
                       std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  std::vector<double> upper(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      diag[i] -= off[i - 1] * upper[i - 1];
      rhs[i] -= off[i - 1] * rhs[i - 1];
    }
    if (!(diag[i] > 0.0) || !std::isfinite(diag[i])) return false;
    if (i + 1 < n) upper[i] = off[i] / diag[i];
    rhs[i] /= diag[i];
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= upper[i] * rhs[i + 1];
  return true;
}

// Newton's method on the smoothed objective for one value of eps. Returns the
// number of Newton iterations taken.
int newton_stage(const Problem& problem, std::vector<double>& tau, double eps) {
  const std::size_t m = problem.size();
  const auto& lines = problem.instance.requests;
  std::vector<Vector> w(m);
  std::vector<double> phi(m);
  std::vector<double> grad(m), diag(m), off(m > 0 ? m - 1 : 0);

  // d^T H_i d' with H_i = (I - w w^T) / phi.
  auto hess_form = [&](std::size_t i, const Vector& d1, const Vector& d2) {
    return (d1.dot(d2) - w[i].dot(d1) * w[i].dot(d2)) / phi[i];
  };

  int iterations = 0;
  double f = problem.smoothed(tau, eps);
  for (; iterations < 100; ++iterations) {
    Point prev = problem.instance.start;
    for (std::size_t i = 0; i < m; ++i) {
      Point cur = lines[i].at(tau[i]);
      const Vector e = cur - prev;
      phi[i] = std::sqrt(e.squaredNorm() + eps * eps);
      w[i] = e / phi[i];
      prev = std::move(cur);
    }
    for (std::size_t i = 0; i < m; ++i) {
      const Vector& d = lines[i].dir();
      grad[i] = w[i].dot(d);
      diag[i] = hess_form(i, d, d);
      if (i + 1 < m) {
        grad[i] -= w[i + 1].dot(d);
        diag[i] += hess_form(i + 1, d, d);
        off[i] = -hess_form(i + 1, d, lines[i + 1].dir());
      }
    }
    std::vector<double> step(grad.begin(), grad.end());
    if (!solve_tridiagonal(diag, off, step)) break;
    double decrement = 0.0;  // g^T H^{-1} g
    for (std::size_t i = 0; i < m; ++i) decrement += grad[i] * step[i];
    // Below this the decrease is lost in rounding of f.
    if (!(decrement > 1e-26 * (1.0 + f * f))) break;

    double t = 1.0;
    std::vector<double> trial(m);
    bool improved = false;
    for (int k = 0; k < 60; ++k, t *= 0.5) {
      for (std::size_t i = 0; i < m; ++i) trial[i] = tau[i] - t * step[i];
      const double ft = problem.smoothed(trial, eps);
      if (ft < f && ft <= f - 0.25 * t * decrement) {
        tau.swap(trial);
        f = ft;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return iterations;
}

void smoothed_newton(const Problem& problem, std::vector<double>& tau, double scale) {
  for (double eps = 0.1 * scale; eps >= 1e-13 * scale; eps *= 0.1) newton_stage(problem, tau, eps);
}

struct PolishResult {
  std::vector<double> trace;
  int sweeps = 0;
  bool converged = false;
};

PolishResult coordinate_sweeps(const Problem& problem, std::vector<double>& tau, double tol,
                               int max_sweeps) {
  const std::size_t m = problem.size();
  PolishResult out;
  double f = problem.objective(tau);
  out.trace.push_back(f);
  while (out.sweeps < max_sweeps) {
    for (std::size_t i = 0; i < m; ++i) {
      const auto idx = static_cast<std::ptrdiff_t>(i);
      const Point a = problem.point(tau, idx - 1);
      const Point cur = problem.point(tau, idx);
      std::optional<Point> b;
      if (i + 1 < m) b = problem.point(tau, idx + 1);
      const Line& line = problem.instance.requests[i];
      const Point cand = minimize_on_line(line, a, b);
      const double before = distance(a, cur) + (b ? distance(cur, *b) : 0.0);
      const double after = distance(a, cand) + (b ? distance(cand, *b) : 0.0);
      if (after < before) tau[i] = line.param_of(cand);
    }
    ++out.sweeps;
    const double next = std::min(problem.objective(tau), f);
    out.trace.push_back(next);
    const double gain = f - next;
    f = next;
    if (gain < tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(certificate_tol > 0.0)) throw InvalidInput("SolverConfig: certificate_tol must be positive");
  if (max_sweeps < 1) throw InvalidInput("SolverConfig: max_sweeps must be at least 1");
  if (restarts < 1) throw InvalidInput("SolverConfig: restarts must be at least 1");
}

Point minimize_on_line(const Line& line, const Point& a, const std::optional<Point>& b) {
  require_same_dim(a, line.base(), "minimize_on_line");
  if (!b) return project_point_onto_line(a, line);
  require_same_dim(*b, line.base(), "minimize_on_line");

  const double ta = line.param_of(a);
  const double tb = line.param_of(*b);
  double lo = std::min(ta, tb);
  double hi = std::max(ta, tb);
  const double width = hi - lo;
  if (width == 0.0) return line.at(lo);
  const double tol = 1e-12 * (1.0 + width);

  auto f = [&](double t) {
    const Point q = line.at(t);
    return distance(a, q) + distance(q, *b);
  };

  // Golden-section until function comparisons lose resolution near the minimum.
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  while (hi - lo > 1e-5 * width && hi - lo > tol) {
    if (std::abs(f1 - f2) <= 4.0 * kEps * std::max(f1, f2)) break;
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }

  // Right derivative of f; at a kink the minimizer is where it changes sign.
  auto slope = [&](double t) {
    const Point q = line.at(t);
    const double da = distance(a, q);
    const double db = distance(q, *b);
    const double ga = da > 0.0 ? (t - ta) / da : 1.0;
    const double gb = db > 0.0 ? (t - tb) / db : 1.0;
    return ga + gb;
  };
  // Golden-section decisions can be wrong once f1 and f2 agree to rounding, so
  // re-open the bracket on any side where the slope says the minimum escaped.
  if (slope(lo) > 0.0) lo = std::min(ta, tb);
  if (slope(hi) < 0.0) hi = std::max(ta, tb);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (slope(mid) >= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double t = f(lo) <= f(hi) ? lo : hi;
  return line.at(t);
}

double check_first_order(const Path& path, const Instance& instance) {
  const auto& lines = instance.requests;
  if (path.points.size() != lines.size() + 1) {
    throw InvalidInput("check_first_order: path length does not match the instance");
  }
  double extent = 0.0;
  for (std::size_t t = 1; t < path.points.size(); ++t) {
    const Point& p = path.points[t];
    if (distance(p, project_point_onto_line(p, lines[t - 1])) > feasibility_tol(p)) {
      throw InvalidInput("check_first_order: point " + std::to_string(t) + " is off its line");
    }
    extent = std::max(extent, distance(p, path.points[0]));
  }
  const double coincident = 1e-9 * (1.0 + extent);

  double residual = 0.0;
  const std::size_t m = lines.size();
  for (std::size_t t = 1; t <= m; ++t) {
    const Point& p = path.points[t];
    const Vector& dir = lines[t - 1].dir();
    const Vector to_prev = path.points[t - 1] - p;
    const bool has_prev = to_prev.norm() > coincident;
    const bool has_next = t < m && (path.points[t + 1] - p).norm() > coincident;
    if (t < m && (path.points[t + 1] - p).norm() <= coincident) {
      // Coincident neighbour: subgradient condition |<u, dir>| <= 1 for the other edge.
      if (has_prev) residual = std::max(residual, std::abs(to_prev.normalized().dot(dir)) - 1.0);
      continue;
    }
    if (!has_prev) {
      if (has_next) {
        const Vector u = (path.points[t + 1] - p).normalized();
        residual = std::max(residual, std::abs(u.dot(dir)) - 1.0);
      }
      continue;
    }
    Vector sum = to_prev.normalized();
    if (has_next) sum += (path.points[t + 1] - p).normalized();
    residual = std::max(residual, std::abs(sum.dot(dir)));
  }
  return std::max(residual, 0.0);
}

OptResult solve_offline(const Instance& instance, const SolverConfig& cfg) {
  cfg.validate();
  instance.validate();
  const Problem problem{instance};

  OptResult best;
  if (problem.size() == 0) {
    best.path.points = {instance.start};
    best.converged = true;
    best.objective_trace = {0.0};
    best.restart_objectives = {0.0};
    return best;
  }

  const std::vector<double> greedy = greedy_params(problem);
  const double f0 = problem.objective(greedy);
  const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-12 * (1.0 + f0);
  const double scale = std::max(f0, instance.diameter());
  if (f0 == 0.0) {
    best.path.points = problem.points(greedy);
    best.converged = true;
    best.objective_trace = {0.0};
    best.restart_objectives = {0.0};
    return best;
  }

  double best_objective = std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<double> tau = greedy;
    if (r > 0) {
      std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(r));
      std::normal_distribution<double> jitter(0.0, scale);
      for (double& t : tau) t += jitter(rng);
    }
    smoothed_newton(problem, tau, scale);
    PolishResult polish = coordinate_sweeps(problem, tau, tol, cfg.max_sweeps);
    const double objective = polish.trace.back();
    best.restart_objectives.push_back(objective);
    if (objective < best_objective) {
      best_objective = objective;
      best.path.points = problem.points(tau);
      best.converged = polish.converged;
      best.sweeps_used = polish.sweeps;
      best.objective_trace = std::move(polish.trace);
    }
  }
  best.path.cost = path_cost(best.path.points);
  best.certificate_residual = check_first_order(best.path, instance);
  return best;
}

}  // namespace linechase
