// Acceptance battery. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "linechase/adversaries.hpp"
#include "linechase/offline_opt.hpp"
#include "linechase/policies.hpp"
#include "linechase/verification.hpp"

using namespace linechase;

namespace {

constexpr double kRatioSlack = 1e-6;
constexpr std::size_t kAuditInstances = 1000;
constexpr std::size_t kAuditLines = 50;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

struct AuditSummary {
  double max_ratio = 0.0;
  double max_residual = 0.0;
  std::size_t unconverged = 0;
};

AuditSummary audit(const OnlinePolicy& policy, Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  AuditSummary s;
  for (std::size_t i = 0; i < kAuditInstances; ++i) {
    const Instance inst = random_instance(dim, kAuditLines, rng, i % 2 == 1);
    const RatioAudit r = ratio_audit(policy, inst);
    s.max_ratio = std::max(s.max_ratio, r.ratio);
    s.max_residual = std::max(s.max_residual, r.certificate_residual);
    if (!r.solver_converged) ++s.unconverged;
  }
  return s;
}

void criterion_1() {
  const auto t0 = Clock::now();
  const AuditSummary s = audit(DriftPolicy{}, 2, 1001);
  const double secs = seconds_since(t0);
  report(1, s.max_ratio <= 3.0 + kRatioSlack && secs < 60.0,
         fmt("drift on %zu random 2D instances x %zu lines: max ratio %.6f (<= 3 + 1e-6), "
             "%.1f s (< 60 s)",
             kAuditInstances, kAuditLines, s.max_ratio, secs));
}

void criterion_2() {
  const auto t0 = Clock::now();
  const FuzzReport fz = fuzz_potential(1000000, 2002);
  const PotentialStepReport tight = near_tight_potential_step(1e-6);
  const double secs = seconds_since(t0);
  const double floor = -1e-9 * (1.0 + fz.worst.rhs);
  const double tight_rel = tight.slack / tight.rhs;
  report(2,
         fz.violations == 0 && fz.worst.slack >= floor && tight.holds() && tight_rel < 1e-3 &&
             secs < 60.0,
         fmt("potential fuzz n=%zu: min slack %.3e (floor %.3e), %zu violations; near-tight "
             "slack/rhs %.3e (< 1e-3); %.1f s (< 60 s)",
             fz.samples, fz.worst.slack, floor, fz.violations, tight_rel, secs));
}

void criterion_3() {
  const auto t0 = Clock::now();
  const ExtendedDriftPolicy ext;
  double worst = 0.0;
  std::string per_dim;
  for (Eigen::Index d : {3, 5, 8}) {
    const AuditSummary s = audit(ext, d, 3000 + static_cast<std::uint64_t>(d));
    worst = std::max(worst, s.max_ratio);
    per_dim += fmt(" d=%d:%.6f", static_cast<int>(d), s.max_ratio);
  }

  // Coplanar reduction: 500 instances x 20 steps in R^5.
  std::mt19937_64 rng(3003);
  const DriftPolicy drift;
  double max_dev = 0.0;
  std::size_t steps = 0;
  while (steps < 10000) {
    const auto [inst, plane] = random_coplanar_instance(5, 20, rng);
    Instance flat;
    auto local_line = [&](const Line& l) {
      return Line(plane.to_local(l.base()),
                  Eigen::Vector2d(l.dir().dot(plane.u), l.dir().dot(plane.v)));
    };
    flat.start = plane.to_local(inst.start);
    flat.initial_line = local_line(*inst.initial_line);
    for (const auto& l : inst.requests) flat.requests.push_back(local_line(l));
    const Path high = run_policy(ext, inst);
    const Path low = run_policy(drift, flat);
    for (std::size_t t = 1; t < high.points.size(); ++t) {
      const Point lifted = plane.to_global(Eigen::Vector2d(low.points[t]));
      max_dev = std::max(max_dev, (lifted - high.points[t]).norm() / (1.0 + lifted.norm()));
      ++steps;
    }
  }
  const double secs = seconds_since(t0);
  report(3, worst <= 3.0 + kRatioSlack && max_dev <= 1e-9,
         fmt("extended-drift max ratio%s (<= 3 + 1e-6); coplanar reduction over %zu steps in "
             "R^5: max deviation %.3e (<= 1e-9); %.1f s",
             per_dim.c_str(), steps, max_dev, secs));
}

void criterion_4() {
  const auto t0 = Clock::now();
  const ThreeLineBounds b = three_line_bounds();
  const double got[] = {b.adv_a1, b.alg_a1, b.adv_a3, b.alg_a3, b.adv_a2, b.alg_a2};
  const double want[] = {1.23679, 1.89948, 1.142963, 1.75537, 1.50435, 2.31039};
  double max_err = 0.0;
  for (int i = 0; i < 6; ++i) max_err = std::max(max_err, std::abs(got[i] - want[i]));
  const double min_ratio = std::min({b.ratio_a1(), b.ratio_a3(), b.ratio_a2()});
  const double secs = seconds_since(t0);
  report(4, max_err <= 1e-4 && min_ratio >= 1.5358 && secs < 1.0,
         fmt("three-line constants: max |value - reference| %.2e (<= 1e-4); branch ratios "
             "%.6f %.6f %.6f (>= 1.5358); %.4f s (< 1 s)",
             max_err, b.ratio_a1(), b.ratio_a3(), b.ratio_a2(), secs));
}

void criterion_5() {
  const auto t0 = Clock::now();
  double worst = 1e300;
  std::string detail;
  bool complete = true;
  for (const char* name : {"drift", "greedy", "beta:const:0.3", "beta:const:1.0"}) {
    const auto policy = make_policy(name);
    const AdversaryTranscript tr = arbitrary_lb_adversary(*policy, {}, {500, 1e-4});
    worst = std::min(worst, tr.ratio);
    complete = complete && tr.force_complete;
    detail += fmt(" %s:%s:%.4f", name, tr.branch.c_str(), tr.ratio);
  }
  const double secs = seconds_since(t0);
  report(5, worst >= 1.5358 - 0.02 && secs < 10.0,
         fmt("adaptive three-line adversary k=500 r=1e-4:%s; min %.4f (>= 1.5158)%s; %.2f s "
             "(< 10 s)",
             detail.c_str(), worst, complete ? "" : " [force incomplete]", secs));
}

void criterion_6() {
  const auto t0 = Clock::now();
  const AdversaryTranscript drift = memoryless_lb_main(DriftPolicy{}, 1e-3, 100000);
  const auto beta03 = make_policy("beta:const:0.3");
  const AdversaryTranscript b = memoryless_lb_main(*beta03, 1e-3, 100000);
  const double theory = theoretical_memoryless_ratio(0.3);
  const double rel = std::abs(b.ratio / theory - 1.0);
  const auto zero = make_policy("beta:const:0");
  const AdversaryTranscript rot = memoryless_lb_rotation(*zero, 0.01, 10000);
  const double secs = seconds_since(t0);
  report(6,
         drift.ratio >= 2.95 && drift.ratio <= 3.05 && rel <= 0.02 && rot.ratio >= 10.0 &&
             secs < 30.0,
         fmt("memoryless: drift %.5f in [2.95, 3.05]; beta 0.3 %.5f vs %.5f (rel %.2e <= 0.02); "
             "rotation vs beta 0 %.2f (>= 10); %.2f s (< 30 s)",
             drift.ratio, b.ratio, theory, rel, rot.ratio, secs));
}

// Moves to the projection of a scripted point for the first requests, then greedily.
class ScriptedPolicy final : public OnlinePolicy {
 public:
  explicit ScriptedPolicy(std::vector<Point> script) : script_(std::move(script)) {}
  Point next(const PolicyState& state, const Line& request) const override {
    const std::size_t t = step_++;
    const Point& aim = t < script_.size() ? script_[t] : state.current;
    return project_point_onto_line(aim, request);
  }
  std::string name() const override { return "scripted"; }

 private:
  std::vector<Point> script_;
  mutable std::size_t step_ = 0;
};

void criterion_7() {
  const auto t0 = Clock::now();
  const ThreeLineGeometry g = three_line_geometry();
  auto x_on = [](const Line& l, double x) { return l.at((x - l.base()(0)) / l.dir()(0)); };
  const struct {
    const char* branch;
    std::vector<Point> script;
    double reference;
  } branches[] = {
      {"force-A1", {g.P1, x_on(g.L2, g.P2(0) + 0.1)}, 1.23679},
      {"force-A3", {g.P1, g.P2, x_on(g.L3, g.P3(0) - 0.05)}, 1.142963},
      {"force-A2", {g.P1, g.P2, x_on(g.L3, g.P3(0) + 0.05)}, 1.50435},
  };
  double max_err = 0.0;
  double max_ref_err = 0.0;
  std::string detail;
  bool branches_ok = true;
  for (const auto& br : branches) {
    const ScriptedPolicy policy(br.script);
    const AdversaryTranscript tr = arbitrary_lb_adversary(policy, {}, {500, 1e-4});
    branches_ok = branches_ok && tr.branch == br.branch;
    Instance inst;
    inst.start = g.P0;
    inst.requests = tr.lines;
    const OptResult opt = solve_offline(inst);
    const double analytic = distance(g.P0, tr.adversary_points.back());
    max_err = std::max(max_err, std::abs(opt.path.cost - analytic));
    max_ref_err = std::max(max_ref_err, std::abs(opt.path.cost - br.reference));
    detail += fmt(" %s:%.7f", tr.branch.c_str(), opt.path.cost);
  }

  std::mt19937_64 rng(7007);
  const DriftPolicy drift;
  const GreedyPolicy greedy;
  double max_residual = 0.0;
  double max_excess = -1e300;
  for (std::size_t i = 0; i < kAuditInstances; ++i) {
    const Instance inst = random_instance(2, kAuditLines, rng, i % 2 == 0);
    const OptResult opt = solve_offline(inst);
    const double online = std::min(run_policy(drift, inst).cost, run_policy(greedy, inst).cost);
    max_residual = std::max(max_residual, opt.certificate_residual);
    max_excess = std::max(max_excess, opt.path.cost - online);
  }
  const double secs = seconds_since(t0);
  report(7,
         branches_ok && max_err <= 1e-6 && max_ref_err <= 1e-5 && max_residual <= 1e-7 &&
             max_excess <= 1e-9,
         fmt("solver on straight branches%s: max |solver - analytic| %.2e (<= 1e-6), vs "
             "reference values %.2e (<= 1e-5); %zu random instances: max certificate residual "
             "%.2e (<= 1e-7), max (solver - min(greedy, drift)) %.3e (<= 1e-9); %.1f s",
             detail.c_str(), max_err, max_ref_err, kAuditInstances, max_residual, max_excess,
             secs));
}

void criterion_8() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(8008);
  const char* planar[] = {"drift",         "greedy",         "beta:drift",
                          "beta:const:0",  "beta:const:0.3", "beta:const:0.70710678118654752",
                          "beta:const:1"};
  double worst = 0.0;
  std::string detail;
  for (const char* name : planar) {
    const auto policy = make_policy(name);
    double w = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Instance inst = random_instance(2, 30, rng, i % 2 == 0);
      w = std::max(w, check_rts_oblivious(*policy, inst, random_similarity(2, rng)));
    }
    worst = std::max(worst, w);
    detail += fmt(" %s:%.1e", name, w);
  }
  const ExtendedDriftPolicy ext;
  for (Eigen::Index d : {2, 3, 5, 8}) {
    double w = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Instance inst = random_instance(d, 30, rng, i % 2 == 0);
      w = std::max(w, check_rts_oblivious(ext, inst, random_similarity(d, rng)));
    }
    worst = std::max(worst, w);
    detail += fmt(" extended-drift/d=%d:%.1e", static_cast<int>(d), w);
  }
  const double secs = seconds_since(t0);
  report(8, worst <= 1e-9,
         fmt("similarity invariance over 1000 instances each, scales in [1e-3, 1e3]:%s; max "
             "%.2e (<= 1e-9); %.1f s",
             detail.c_str(), worst, secs));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
