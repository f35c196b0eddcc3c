#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "linechase/adversaries.hpp"
#include "linechase/instance_io.hpp"
#include "linechase/offline_opt.hpp"
#include "linechase/policies.hpp"
#include "linechase/verification.hpp"

namespace linechase::cli {

namespace {

struct Options {
  std::string instance;
  std::string policy = "drift";
  std::string out;
  std::uint64_t seed = 1;
  double a = 0.0;
  double h = 0.01;
  int steps = 0;
  int force_lines = 500;
  double stop_radius = 1e-4;
  std::string suite;
  std::string kind;
  std::size_t n = 0;
  int dim = 2;
  std::string beta_grid = "0.3,0.5,0.70710678118654752,1,1.5";
};

// Writes CSV to --out ("-" means the command's stdout); no --out, no CSV.
template <typename Writer>
void emit_csv(const Options& opt, std::ostream& out, Writer&& write) {
  if (opt.out.empty()) return;
  if (opt.out == "-") {
    write(out);
    return;
  }
  std::ofstream file(opt.out);
  if (!file) throw InvalidInput("cannot write '" + opt.out + "'");
  write(file);
}

std::string replay_config(const PotentialStepReport& r) {
  nlohmann::json doc;
  auto vec = [](const Point& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index k = 0; k < p.size(); ++k) arr.push_back(p(k));
    return arr;
  };
  doc["P"] = vec(r.P);
  doc["A"] = vec(r.A);
  doc["A_new"] = vec(r.A_new);
  doc["L"] = {{"point", vec(r.L.base())}, {"dir", vec(r.L.dir())}};
  doc["L_new"] = {{"point", vec(r.L_new.base())}, {"dir", vec(r.L_new.dir())}};
  doc["lhs"] = r.lhs;
  doc["rhs"] = r.rhs;
  doc["slack"] = r.slack;
  return doc.dump();
}

int cmd_run(const Options& opt, std::ostream& out) {
  const auto policy = make_policy(opt.policy);
  const Instance instance = load_instance(opt.instance);
  const Path path = run_policy(*policy, instance);
  emit_csv(opt, out, [&](std::ostream& os) { write_path_csv(os, path); });
  out << "policy=" << policy->name() << " steps=" << instance.requests.size()
      << " total_cost=" << format_real(path.cost) << '\n';
  return kExitOk;
}

int cmd_opt(const Options& opt, std::ostream& out) {
  const Instance instance = load_instance(opt.instance);
  SolverConfig cfg;
  cfg.seed = opt.seed;
  const OptResult res = solve_offline(instance, cfg);
  emit_csv(opt, out, [&](std::ostream& os) { write_path_csv(os, res.path); });
  out << "opt_cost=" << format_real(res.path.cost) << " converged=" << (res.converged ? 1 : 0)
      << " sweeps=" << res.sweeps_used
      << " certificate_residual=" << format_real(res.certificate_residual) << '\n';
  return kExitOk;
}

int cmd_adversary(const Options& opt, std::ostream& out) {
  const auto policy = make_policy(opt.policy);
  AdversaryTranscript tr;
  if (opt.kind == "arbitrary") {
    ForceConfig force;
    force.k = opt.force_lines;
    force.stop_radius = opt.stop_radius;
    tr = arbitrary_lb_adversary(*policy, ArbitraryLBConstants{}, force);
  } else if (opt.kind == "memoryless-main") {
    tr = memoryless_lb_main(*policy, opt.a > 0 ? opt.a : 1e-3, opt.steps > 0 ? opt.steps : 100000);
  } else if (opt.kind == "memoryless-rotation") {
    tr = memoryless_lb_rotation(*policy, opt.a > 0 ? opt.a : 0.01,
                                opt.steps > 0 ? opt.steps : 10000);
  } else if (opt.kind == "memoryless-single") {
    tr = memoryless_lb_single_step(*policy, opt.h);
  } else {
    throw InvalidInput("unknown adversary kind '" + opt.kind +
                       "'; valid kinds: arbitrary memoryless-main memoryless-rotation "
                       "memoryless-single");
  }
  emit_csv(opt, out, [&](std::ostream& os) { write_transcript_csv(os, tr); });
  out << "branch=" << tr.branch << " alg_cost=" << format_real(tr.alg_cost)
      << " adv_cost=" << format_real(tr.adv_cost) << " ratio=" << format_real(tr.ratio) << '\n';
  return kExitOk;
}

int verify_potential(const Options& opt, std::ostream& out) {
  const auto policy = make_policy(opt.policy);
  const std::size_t n = opt.n > 0 ? opt.n : 1000000;
  const FuzzReport rep = fuzz_potential(n, opt.seed, *policy);
  out << "suite=potential policy=" << policy->name() << " samples=" << rep.samples
      << " violations=" << rep.violations << " worst_slack=" << format_real(rep.worst.slack)
      << " worst_regime=" << regime_name(rep.worst_regime) << '\n';
  bool ok = rep.violations == 0;
  if (!ok) out << "offending_config=" << replay_config(rep.worst) << '\n';
  if (policy->name() == "drift") {
    const PotentialStepReport tight = near_tight_potential_step(1e-6);
    out << "near_tight slack/rhs=" << format_real(tight.slack / tight.rhs) << '\n';
    ok = ok && tight.holds() && tight.slack < 1e-3 * tight.rhs;
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int verify_rts(const Options& opt, std::ostream& out) {
  const std::size_t n = opt.n > 0 ? opt.n : 1000;
  std::vector<std::string> names = {"drift", "greedy", "beta:drift", "beta:const:0.3",
                                    "beta:const:1", "extended-drift"};
  const bool explicit_policy = opt.policy != "drift";
  if (explicit_policy) names = {opt.policy};
  std::mt19937_64 rng(opt.seed);
  bool ok = true;
  for (const auto& name : names) {
    const auto policy = make_policy(name);
    const std::vector<int> dims =
        name == "extended-drift" ? std::vector<int>{2, 5} : std::vector<int>{opt.dim};
    for (int dim : dims) {
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const Instance inst = random_instance(dim, 20, rng, i % 2 == 1);
        worst = std::max(worst, check_rts_oblivious(*policy, inst, random_similarity(dim, rng)));
      }
      out << "suite=rts policy=" << name << " dim=" << dim << " instances=" << n
          << " max_deviation=" << format_real(worst) << '\n';
      ok = ok && worst <= 1e-9;
    }
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int verify_ratio_audit(const Options& opt, std::ostream& out) {
  const std::size_t n = opt.n > 0 ? opt.n : 100;
  const std::string name = opt.dim == 2 ? opt.policy : "extended-drift";
  const auto policy = make_policy(name);
  std::mt19937_64 rng(opt.seed);
  std::vector<RatioRow> rows;
  double worst = 0.0;
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const Instance inst = random_instance(opt.dim, 50, rng);
    const RatioAudit audit = ratio_audit(*policy, inst);
    worst = std::max(worst, audit.ratio);
    const bool row_ok = audit.ratio <= 3.0 + 1e-6 && audit.certificate_residual <= 1e-7;
    ok = ok && row_ok;
    rows.push_back({std::to_string(i), name, audit.alg_cost, audit.opt_cost, audit.ratio,
                    row_ok ? "" : "violation"});
  }
  emit_csv(opt, out, [&](std::ostream& os) { write_ratio_csv(os, rows); });
  out << "suite=ratio-audit policy=" << name << " dim=" << opt.dim << " instances=" << n
      << " max_ratio=" << format_real(worst) << '\n';
  return ok ? kExitOk : kExitCheckFailed;
}

int verify_three_line(std::ostream& out) {
  const ThreeLineBounds b = three_line_bounds();
  struct Row {
    const char* label;
    double value;
    const char* bound;
    bool upper;
  };
  const Row rows[] = {
      {"adv_cost_force_A1", b.adv_a1, "1.23679", true},
      {"alg_cost_force_A1", b.alg_a1, "1.89948", false},
      {"adv_cost_force_A3", b.adv_a3, "1.142963", true},
      {"alg_cost_force_A3", b.alg_a3, "1.75537", false},
      {"adv_cost_force_A2", b.adv_a2, "1.50435", true},
      {"alg_cost_force_A2", b.alg_a2, "2.31039", false},
  };
  bool ok = true;
  for (const auto& r : rows) {
    const double bound = std::stod(r.bound);
    const bool row_ok = (r.upper ? r.value <= bound : r.value >= bound) &&
                        std::abs(r.value - bound) <= 1e-4;
    ok = ok && row_ok;
    out << r.label << '=' << format_real(r.value) << (r.upper ? " <= " : " >= ") << r.bound
        << (row_ok ? " ok" : " FAIL") << '\n';
  }
  for (const auto& [label, ratio] : {std::pair{"ratio_force_A1", b.ratio_a1()},
                                     std::pair{"ratio_force_A3", b.ratio_a3()},
                                     std::pair{"ratio_force_A2", b.ratio_a2()}}) {
    const bool row_ok = ratio >= 1.5358;
    ok = ok && row_ok;
    out << label << '=' << format_real(ratio) << " >= 1.5358" << (row_ok ? " ok" : " FAIL")
        << '\n';
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  if (opt.suite == "potential") return verify_potential(opt, out);
  if (opt.suite == "rts") return verify_rts(opt, out);
  if (opt.suite == "ratio-audit") return verify_ratio_audit(opt, out);
  if (opt.suite == "section5-constants") return verify_three_line(out);
  throw InvalidInput("unknown suite '" + opt.suite +
                     "'; valid suites: potential rts ratio-audit section5-constants");
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || !(v > 0.0)) {
      throw InvalidInput("--beta-grid: '" + item + "' is not a positive number");
    }
    grid.push_back(v);
  }
  if (grid.empty()) throw InvalidInput("--beta-grid: empty grid");
  return grid;
}

int cmd_sweep(const Options& opt, std::ostream& out) {
  const double a = opt.a > 0 ? opt.a : 1e-3;
  const int m = opt.steps > 0 ? opt.steps : 100000;
  std::vector<SweepRow> rows;
  for (double beta : parse_grid(opt.beta_grid)) {
    const BetaPolicy policy(constant_beta_policy(beta));
    const AdversaryTranscript tr = memoryless_lb_main(policy, a, m);
    SweepRow row;
    row.beta = beta;
    row.simulated_ratio = tr.ratio;
    row.theoretical_ratio = theoretical_memoryless_ratio(beta);
    row.gap = std::abs(row.simulated_ratio - row.theoretical_ratio);
    rows.push_back(row);
  }
  emit_csv(opt, out, [&](std::ostream& os) { write_sweep_csv(os, rows); });
  for (const auto& r : rows) {
    out << "beta=" << format_real(r.beta) << " simulated=" << format_real(r.simulated_ratio)
        << " theoretical=" << format_real(r.theoretical_ratio) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online line chasing: policies, offline optimum, adversaries, verification",
               "line-chase"};
  app.require_subcommand(1);
  Options opt;

  auto* run_cmd = app.add_subcommand("run", "Run an online policy on an instance file");
  run_cmd->add_option("--instance", opt.instance, "Instance JSON file")->required();
  run_cmd->add_option("--policy", opt.policy, "drift | extended-drift | greedy | beta:drift | beta:const:<v>");
  run_cmd->add_option("--out", opt.out, "Path CSV ('-' for stdout)");

  auto* opt_cmd = app.add_subcommand("opt", "Solve for the offline optimum path");
  opt_cmd->add_option("--instance", opt.instance, "Instance JSON file")->required();
  opt_cmd->add_option("--out", opt.out, "Path CSV ('-' for stdout)");
  opt_cmd->add_option("--seed", opt.seed, "Seed for restart perturbations");

  auto* adv_cmd = app.add_subcommand("adversary", "Run a lower-bound adversary against a policy");
  adv_cmd->add_option("--kind", opt.kind,
                      "arbitrary | memoryless-main | memoryless-rotation | memoryless-single")
      ->required();
  adv_cmd->add_option("--policy", opt.policy, "Policy under attack");
  adv_cmd->add_option("--a", opt.a, "Rotation slope (memoryless kinds)")
      ->check(CLI::PositiveNumber);
  adv_cmd->add_option("--height", opt.h, "Height h for memoryless-single")
      ->check(CLI::PositiveNumber);
  adv_cmd->add_option("--steps", opt.steps, "Number of requests (memoryless kinds)")
      ->check(CLI::PositiveNumber);
  adv_cmd->add_option("--force-lines", opt.force_lines, "Forcing lines per target")
      ->check(CLI::PositiveNumber);
  adv_cmd->add_option("--stop-radius", opt.stop_radius, "Forcing stops within this radius")
      ->check(CLI::PositiveNumber);
  adv_cmd->add_option("--out", opt.out, "Transcript CSV ('-' for stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Run a verification battery");
  verify_cmd->add_option("--suite", opt.suite, "potential | rts | ratio-audit | section5-constants")
      ->required();
  verify_cmd->add_option("--n", opt.n, "Samples or instances")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", opt.seed, "Random seed");
  verify_cmd->add_option("--policy", opt.policy, "Policy to check");
  verify_cmd->add_option("--dim", opt.dim, "Dimension for rts / ratio-audit")
      ->check(CLI::Range(2, 64));
  verify_cmd->add_option("--out", opt.out, "Per-instance CSV for ratio-audit");

  auto* sweep_cmd = app.add_subcommand("sweep", "Constant-beta sweep of the memoryless bound");
  sweep_cmd->add_option("--beta-grid", opt.beta_grid, "Comma-separated positive betas");
  sweep_cmd->add_option("--a", opt.a, "Rotation slope")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--steps", opt.steps, "Requests per run")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", opt.out, "Sweep CSV ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(opt, out);
    if (*opt_cmd) return cmd_opt(opt, out);
    if (*adv_cmd) return cmd_adversary(opt, out);
    if (*verify_cmd) return cmd_verify(opt, out);
    if (*sweep_cmd) return cmd_sweep(opt, out);
  } catch (const ContractViolation& e) {
    err << "contract violation: " << e.what() << '\n';
    return kExitContract;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace linechase::cli
