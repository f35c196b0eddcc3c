#include "linechase/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "linechase/policies.hpp"

namespace linechase {

namespace {

Point xy(double x, double y) { return Eigen::Vector2d(x, y); }

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

bool coin(std::mt19937_64& rng) { return std::bernoulli_distribution(0.5)(rng); }

void require_on(const Point& p, const Line& line, const char* what) {
  if (distance(p, project_point_onto_line(p, line)) > feasibility_tol(p)) {
    throw InvalidInput(std::string("check_potential_step: ") + what);
  }
}

struct Sample {
  Point P, A, A_new;
  Line L, L_new;
};

}  // namespace

const char* regime_name(PotentialRegime r) {
  switch (r) {
    case PotentialRegime::BeforeS: return "before-S";
    case PotentialRegime::SToPNew: return "S-to-P'";
    case PotentialRegime::PNewToPBar: return "P'-to-Pbar";
    case PotentialRegime::AfterPBar: return "after-Pbar";
    case PotentialRegime::Parallel: return "parallel";
    case PotentialRegime::Uniform: return "uniform";
  }
  return "?";
}

PotentialStepReport check_potential_step(const OnlinePolicy& policy, const Point& P,
                                         const Line& L, const Line& L_new, const Point& A,
                                         const Point& A_new) {
  require_same_dim(P, L.base(), "check_potential_step");
  require_same_dim(A, L_new.base(), "check_potential_step");
  require_on(P, L, "P is not on L");
  require_on(A, L, "A is not on L");
  require_on(A_new, L_new, "A' is not on L'");

  PotentialStepReport r;
  r.P = P;
  r.A = A;
  r.A_new = A_new;
  r.L = L;
  r.L_new = L_new;
  r.P_new = policy.next(PolicyState{P, L}, L_new);
  r.lhs = distance(P, r.P_new) +
          std::numbers::sqrt3 * (distance(A_new, r.P_new) - distance(A, P));
  r.rhs = 3.0 * distance(A, A_new);
  r.slack = r.rhs - r.lhs;
  return r;
}

PotentialStepReport check_potential_step(const Point& P, const Line& L, const Line& L_new,
                                         const Point& A, const Point& A_new) {
  return check_potential_step(DriftPolicy{}, P, L, L_new, A, A_new);
}

FuzzReport fuzz_potential(std::size_t n, std::uint64_t seed, const OnlinePolicy& policy) {
  if (n == 0) throw InvalidInput("fuzz_potential: n must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Line x_axis(xy(0.0, 0.0), xy(1.0, 0.0));

  FuzzReport report;
  report.worst.slack = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < n; ++i) {
    auto regime = static_cast<PotentialRegime>(i % kPotentialRegimes);
    Sample smp{xy(0, 0), xy(0, 0), xy(0, 0), x_axis, x_axis};

    if (regime == PotentialRegime::Parallel) {
      const double h = log_uniform(rng, 1e-6, 1e6);
      const double p = (coin(rng) ? 1 : -1) * log_uniform(rng, 1e-6, 1e6);
      const double a = p + (coin(rng) ? 1 : -1) * log_uniform(rng, 1e-6, 1e6);
      const double a_new = a + (coin(rng) ? 1 : -1) * log_uniform(rng, 1e-6, 1e6);
      smp.L = Line(xy(0.0, h), xy(1.0, 0.0));
      smp.P = xy(p, h);
      smp.A = xy(a, h);
      smp.A_new = xy(a_new, 0.0);
    } else {
      // New line is the x-axis and S the origin. Half the angles are uniform,
      // half cluster near 0 or pi where drift and greedy differ the most.
      double theta = std::numbers::pi * unit(rng);
      if (coin(rng)) {
        theta = log_uniform(rng, 1e-6, 1.0);
        if (coin(rng)) theta = std::numbers::pi - theta;
      }
      const Vector dir = xy(std::cos(theta), std::sin(theta));
      smp.L = Line(xy(0.0, 0.0), dir);
      const double r = log_uniform(rng, 1e-6, 1e6);
      smp.P = r * dir;

      const Point p_new = policy.next(PolicyState{smp.P, smp.L}, x_axis);
      const double s = std::abs(smp.P(0));
      const Vector axis = xy(smp.P(0) >= 0.0 ? 1.0 : -1.0, 0.0);
      const double w_new = p_new.dot(axis);

      double w = 0.0;  // position of the adversary's projection along S -> P̄
      if (s == 0.0) regime = PotentialRegime::Uniform;
      switch (regime) {
        case PotentialRegime::BeforeS: w = -log_uniform(rng, 1e-6, 1e6); break;
        case PotentialRegime::SToPNew: w = std::clamp(w_new, 0.0, s) * unit(rng); break;
        case PotentialRegime::PNewToPBar: {
          const double lo = std::clamp(w_new, 0.0, s);
          w = lo + (s - lo) * unit(rng);
          break;
        }
        case PotentialRegime::AfterPBar: w = s + log_uniform(rng, 1e-6, 1e6); break;
        default: w = (coin(rng) ? 1 : -1) * log_uniform(rng, 1e-6, 1e6); break;
      }
      if (regime == PotentialRegime::Uniform) {
        smp.A = (coin(rng) ? 1 : -1) * log_uniform(rng, 1e-6, 1e6) * dir;
      } else {
        smp.A = (w / s) * smp.P;
      }
      const double a_bar = smp.A(0);
      const double g = std::abs(smp.A(1));
      const double z = coin(rng) ? g / std::numbers::sqrt2 : log_uniform(rng, 1e-6, 1e6);
      smp.A_new = xy(a_bar + (coin(rng) ? 1 : -1) * z, 0.0);
    }

    // Random orientation of the whole picture.
    const Matrix rot = rotation_2d(2.0 * std::numbers::pi * unit(rng));
    const DirectSimilarity f(rot, Vector::Zero(2), 1.0);
    const PotentialStepReport step =
        check_potential_step(policy, f(smp.P), f(smp.L), f(smp.L_new), f(smp.A), f(smp.A_new));

    ++report.samples;
    ++report.per_regime[static_cast<std::size_t>(regime)];
    if (!step.holds()) ++report.violations;
    if (step.slack < report.worst.slack) {
      report.worst = step;
      report.worst_regime = regime;
    }
  }
  return report;
}

FuzzReport fuzz_potential(std::size_t n, std::uint64_t seed) {
  return fuzz_potential(n, seed, DriftPolicy{});
}

PotentialStepReport near_tight_potential_step(double h_over_s) {
  if (!(h_over_s > 0.0)) throw InvalidInput("near_tight_potential_step: need h/s > 0");
  // S at the origin, new line the x-axis, P̄ = (1, 0), P = (1, h).
  const Line x_axis(xy(0.0, 0.0), xy(1.0, 0.0));
  const Point P = xy(1.0, h_over_s);
  const Line L(xy(0.0, 0.0), P);
  const Point A_new = xy(1.0 + h_over_s / std::numbers::sqrt2, 0.0);
  return check_potential_step(P, L, x_axis, P, A_new);
}

double check_rts_oblivious(const OnlinePolicy& policy, const Instance& instance,
                           const DirectSimilarity& f) {
  const Path original = run_policy(policy, instance);
  const Path mapped = run_policy(policy, transform_instance(f, instance));
  const double norm = 1.0 + f.scale() * instance.diameter();
  double worst = 0.0;
  for (std::size_t t = 0; t < original.points.size(); ++t) {
    worst = std::max(worst, distance(f(original.points[t]), mapped.points[t]) / norm);
  }
  return worst;
}

RatioAudit ratio_audit(const OnlinePolicy& policy, const Instance& instance,
                       const SolverConfig& cfg) {
  RatioAudit out;
  out.alg_cost = run_policy(policy, instance).cost;
  const OptResult opt = solve_offline(instance, cfg);
  out.opt_cost = opt.path.cost;
  out.solver_converged = opt.converged;
  out.certificate_residual = opt.certificate_residual;
  out.ratio = ratio_of(out.alg_cost, out.opt_cost);
  return out;
}

Instance random_instance(Eigen::Index dim, std::size_t m, std::mt19937_64& rng,
                         bool with_initial_line) {
  std::uniform_real_distribution<double> box(-10.0, 10.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto uniform_point = [&] {
    Point p(dim);
    for (Eigen::Index k = 0; k < dim; ++k) p(k) = box(rng);
    return p;
  };
  auto gaussian_dir = [&] {
    Vector v(dim);
    do {
      for (Eigen::Index k = 0; k < dim; ++k) v(k) = gauss(rng);
    } while (v.norm() < 1e-6);
    return v;
  };
  Instance inst;
  inst.start = uniform_point();
  if (with_initial_line) inst.initial_line = Line(inst.start, gaussian_dir());
  inst.requests.reserve(m);
  for (std::size_t t = 0; t < m; ++t) inst.requests.emplace_back(uniform_point(), gaussian_dir());
  return inst;
}

std::pair<Instance, Plane> random_coplanar_instance(Eigen::Index dim, std::size_t m,
                                                    std::mt19937_64& rng) {
  const Matrix rot = random_rotation(dim, rng);
  std::uniform_real_distribution<double> box(-10.0, 10.0);
  Point origin(dim);
  for (Eigen::Index k = 0; k < dim; ++k) origin(k) = box(rng);
  const Plane plane{origin, rot.col(0), rot.col(1)};
  const Instance flat = random_instance(2, m, rng, true);
  auto lift = [&](const Point& q) { return plane.to_global(Eigen::Vector2d(q(0), q(1))); };
  Instance inst;
  inst.start = lift(flat.start);
  inst.initial_line = Line(inst.start, plane.u * flat.initial_line->dir()(0) +
                                           plane.v * flat.initial_line->dir()(1));
  for (const auto& l : flat.requests) {
    inst.requests.emplace_back(lift(l.base()), plane.u * l.dir()(0) + plane.v * l.dir()(1));
  }
  return {std::move(inst), plane};
}

Matrix random_rotation(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  if (q.determinant() < 0.0) q.col(0) = -q.col(0);
  return q;
}

DirectSimilarity random_similarity(Eigen::Index dim, std::mt19937_64& rng, double min_scale,
                                   double max_scale) {
  std::uniform_real_distribution<double> box(-10.0, 10.0);
  Vector t(dim);
  for (Eigen::Index k = 0; k < dim; ++k) t(k) = box(rng);
  const double scale = log_uniform(rng, min_scale, max_scale);
  return {random_rotation(dim, rng), scale * t, scale};
}

}  // namespace linechase
