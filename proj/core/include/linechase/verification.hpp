#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>

#include "linechase/chase_core.hpp"
#include "linechase/geometry.hpp"
#include "linechase/offline_opt.hpp"

namespace linechase {

/// One step of the amortized inequality
///   |P P'| + sqrt3 (|A' P'| - |A P|) <= 3 |A A'|
/// with potential sqrt3 |A P|.
struct PotentialStepReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  Point P, A, A_new, P_new;
  Line L, L_new;

  /// slack >= -1e-9 (1 + rhs)
  bool holds() const { return slack >= -1e-9 * (1.0 + rhs); }
};

PotentialStepReport check_potential_step(const OnlinePolicy& policy, const Point& P,
                                         const Line& L, const Line& L_new, const Point& A,
                                         const Point& A_new);
/// Same, for DRIFT.
PotentialStepReport check_potential_step(const Point& P, const Line& L, const Line& L_new,
                                         const Point& A, const Point& A_new);

/// Where the adversary's projection onto the new line sits relative to S,
/// P' and P̄, plus the parallel and unconstrained samplers.
enum class PotentialRegime { BeforeS, SToPNew, PNewToPBar, AfterPBar, Parallel, Uniform };
inline constexpr std::size_t kPotentialRegimes = 6;
const char* regime_name(PotentialRegime r);

struct FuzzReport {
  PotentialStepReport worst;
  PotentialRegime worst_regime = PotentialRegime::Uniform;
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::array<std::size_t, kPotentialRegimes> per_regime{};
};

/// Samples n planar configurations stratified over the regimes above, with
/// distances log-uniform over [1e-6, 1e6], and returns the smallest slack.
/// Deterministic for a fixed seed.
FuzzReport fuzz_potential(std::size_t n, std::uint64_t seed, const OnlinePolicy& policy);
FuzzReport fuzz_potential(std::size_t n, std::uint64_t seed);

/// A one-parameter family where the inequality becomes tight as h/s -> 0:
/// the adversary starts at P and ends beyond P̄, g/sqrt2 away from it.
PotentialStepReport near_tight_potential_step(double h_over_s);

/// max_t |f(P_t) - P~_t| / (1 + r_f * diameter), where P~ is the run on f(instance).
double check_rts_oblivious(const OnlinePolicy& policy, const Instance& instance,
                           const DirectSimilarity& f);

struct RatioAudit {
  double alg_cost = 0.0;
  double opt_cost = 0.0;
  double ratio = 0.0;
  bool solver_converged = false;
  double certificate_residual = 0.0;
};

RatioAudit ratio_audit(const OnlinePolicy& policy, const Instance& instance,
                       const SolverConfig& cfg = {});

/// Random instance: start and line bases uniform in [-10, 10]^dim, Gaussian directions.
Instance random_instance(Eigen::Index dim, std::size_t m, std::mt19937_64& rng,
                         bool with_initial_line = false);

/// Random instance confined to a random 2-plane of R^dim, plus that plane.
std::pair<Instance, Plane> random_coplanar_instance(Eigen::Index dim, std::size_t m,
                                                    std::mt19937_64& rng);

/// Haar-random rotation in SO(dim).
Matrix random_rotation(Eigen::Index dim, std::mt19937_64& rng);

/// Random direct similarity with scale log-uniform in [min_scale, max_scale].
DirectSimilarity random_similarity(Eigen::Index dim, std::mt19937_64& rng, double min_scale = 1e-3,
                                   double max_scale = 1e3);

}  // namespace linechase
