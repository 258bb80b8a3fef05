// Command-line front end over the C API.
//
//   cats_cli equilibria <cfg>
//   cats_cli check <cfg> --target KIND [--sup-v X --sup-w Y]
//   cats_cli simulate <cfg> --out DIR [--tol T] [--nodes N] [--t-end T]
//   cats_cli lyapunov <cfg> --kind e1|e2|e3|e4 --out DIR [--skip N]
//
// Exit codes: 0 success, 1 verdict or condition failure, 2 usage or
// configuration error, 3 numerical abort.

#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cats/cats.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAbort = 3;

struct ConfigDeleter {
  void operator()(cats_config* c) const { cats_config_free(c); }
};
struct ReportDeleter {
  void operator()(cats_report* r) const { cats_report_free(r); }
};
struct TrajectoryDeleter {
  void operator()(cats_trajectory* t) const { cats_trajectory_free(t); }
};
using ConfigPtr = std::unique_ptr<cats_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<cats_report, ReportDeleter>;
using TrajectoryPtr = std::unique_ptr<cats_trajectory, TrajectoryDeleter>;

int exit_code(cats_status s) {
  switch (s) {
    case CATS_OK: return kExitOk;
    case CATS_E_NEGATIVE_BLOWUP:
    case CATS_E_NONFINITE_STATE:
    case CATS_E_ABORTED_TRAJECTORY: return kExitAbort;
    case CATS_E_KIND_MISMATCH:
    case CATS_E_NEGATIVE_FIELD:
    case CATS_E_MISSING_SAMPLES:
    case CATS_E_TOO_FEW_SAMPLES:
    case CATS_E_ALL_BELOW_FLOOR:
    case CATS_E_INTERNAL: return kExitFailed;
    default: return kExitUsage;
  }
}

// Prints the last error and returns the matching exit code.
int report_error(cats_status s, const char* what) {
  std::fprintf(stderr, "cats_cli: %s: %s (%s)\n", what, cats_last_error(),
               cats_status_name(s));
  return exit_code(s);
}

struct Options {
  std::string config;
  std::string out;
  std::string target;
  std::string kind;
  std::optional<double> sup_v, sup_w;
  std::optional<std::size_t> nodes;
  std::optional<double> t_end;
  double tol = 2e-2;
  std::size_t skip = 1;
};

int load(const Options& o, ConfigPtr& cfg) {
  cats_config* raw = nullptr;
  if (auto s = cats_config_load(o.config.c_str(), &raw); s != CATS_OK) {
    return report_error(s, "config");
  }
  cfg.reset(raw);
  if (o.nodes) {
    if (auto s = cats_config_set_nodes(cfg.get(), *o.nodes); s != CATS_OK) {
      return report_error(s, "--nodes");
    }
  }
  if (o.t_end) {
    if (auto s = cats_config_set_t_end(cfg.get(), *o.t_end); s != CATS_OK) {
      return report_error(s, "--t-end");
    }
  }
  return kExitOk;
}

int cmd_equilibria(const Options& o) {
  ConfigPtr cfg;
  if (int rc = load(o, cfg)) return rc;
  cats_params p;
  cats_config_params(cfg.get(), &p);
  cats_equilibrium eq[8];
  if (auto s = cats_enumerate_equilibria(&p, eq); s != CATS_OK) {
    return report_error(s, "equilibria");
  }
  std::printf("%-20s %14s %14s %14s %14s  %-10s %s\n", "kind", "u", "v", "w", "z",
              "admissible", "residual");
  for (const auto& e : eq) {
    std::printf("%-20s %14.9g %14.9g %14.9g %14.9g  %-10s %.3g\n",
                cats_equilibrium_kind_name(e.kind), e.u, e.v, e.w, e.z,
                e.admissible ? "yes" : "no", e.residual);
  }
  return kExitOk;
}

void print_report(const char* title, const cats_report* r) {
  std::printf("%s: %s\n", title, cats_report_all_satisfied(r) ? "satisfied" : "violated");
  for (std::size_t i = 0; i < cats_report_clause_count(r); ++i) {
    cats_clause c;
    cats_report_clause(r, i, &c);
    std::printf("  %-7s %-60s lhs=%-12.6g rhs=%-12.6g margin=%-12.6g %s\n", c.label,
                c.text, c.lhs, c.rhs, c.margin, c.satisfied ? "ok" : "FAIL");
  }
}

int cmd_check(const Options& o) {
  static const std::map<std::string, int> theorem = {
      {"coexistence", CATS_THM12},
      {"trivial", CATS_THM13},
      {"prey-vanishing", CATS_THM14_1},
      {"primary-vanishing", CATS_THM14_2},
  };
  if (o.sup_v.has_value() != o.sup_w.has_value()) {
    std::fprintf(stderr, "cats_cli: --sup-v and --sup-w must be given together\n");
    return kExitUsage;
  }
  ConfigPtr cfg;
  if (int rc = load(o, cfg)) return rc;
  cats_params p;
  cats_config_params(cfg.get(), &p);

  cats_report* raw = nullptr;
  if (auto s = cats_check_conditions(&p, CATS_COND01, 0, 0, &raw); s != CATS_OK) {
    return report_error(s, "check");
  }
  ReportPtr cond(raw);
  print_report("coexistence conditions", cond.get());

  // The coexistence regime needs the three inequalities; every other regime
  // needs at least one of them broken, and a semi-coexistence state needs its
  // surviving component positive.
  const bool coexists = cats_report_all_satisfied(cond.get());
  bool ok = o.target == "coexistence" ? coexists : !coexists;
  if (o.target == "prey-vanishing" && !(p.a3 < 1)) ok = false;
  if (o.target == "primary-vanishing" && !(p.a5 < 1)) ok = false;
  std::printf("regime %s: %s\n", o.target.c_str(), ok ? "consistent" : "inconsistent");

  if (o.sup_v) {
    if (auto s = cats_check_conditions(&p, theorem.at(o.target), *o.sup_v, *o.sup_w, &raw);
        s != CATS_OK) {
      return report_error(s, "check");
    }
    ReportPtr thm(raw);
    std::printf("Gamma1=%.9g Gamma2=%.9g\n", cats_report_gamma1(thm.get()),
                cats_report_gamma2(thm.get()));
    print_report("convergence conditions", thm.get());
    ok = ok && cats_report_all_satisfied(thm.get());
  }
  return ok ? kExitOk : kExitFailed;
}

// Runs the configured simulation and writes every output file.
int run(const ConfigPtr& cfg, const Options& o, TrajectoryPtr& traj, cats_run_info& info) {
  cats_trajectory* raw = nullptr;
  if (auto s = cats_simulate(cfg.get(), &raw); s != CATS_OK) {
    return report_error(s, "simulate");
  }
  traj.reset(raw);
  cats_trajectory_info(traj.get(), &info);
  if (auto s = cats_write_run_outputs(cfg.get(), traj.get(), o.out.c_str()); s != CATS_OK) {
    return report_error(s, "output");
  }
  if (info.status == CATS_RUN_ABORTED) {
    std::fprintf(stderr, "cats_cli: run aborted: %s (%s)\n",
                 cats_trajectory_abort_message(traj.get()),
                 cats_status_name(static_cast<cats_status>(info.abort_code)));
    return kExitAbort;
  }
  std::fprintf(stderr, "steps=%llu dt=[%g, %g] clamps=%llu t=%g\n",
               static_cast<unsigned long long>(info.steps), info.dt_min, info.dt_max,
               static_cast<unsigned long long>(info.clamp_count), info.final_t);
  return kExitOk;
}

int cmd_simulate(const Options& o) {
  ConfigPtr cfg;
  if (int rc = load(o, cfg)) return rc;
  TrajectoryPtr traj;
  cats_run_info info;
  if (int rc = run(cfg, o, traj, info)) return rc;

  int target = -1;
  cats_config_target(cfg.get(), &target);
  if (target < 0) {
    std::fprintf(stderr, "cats_cli: no target in config, verdict skipped\n");
    return kExitOk;
  }
  cats_verdict v;
  if (auto s = cats_convergence_verdict(traj.get(), -1, o.tol, &v); s != CATS_OK) {
    return report_error(s, "verdict");
  }
  std::printf("target %s, tol %g\n", cats_equilibrium_kind_name(target), v.tol);
  const char names[] = "uvwz";
  for (int f = 0; f < 4; ++f) std::printf("  dist_%c = %.6e\n", names[f], v.distance[f]);
  std::printf("verdict: %s\n", v.pass ? "pass" : "fail");
  return v.pass ? kExitOk : kExitFailed;
}

int cmd_lyapunov(const Options& o) {
  static const std::map<std::string, int> kinds = {
      {"e1", CATS_ENERGY_E1}, {"e2", CATS_ENERGY_E2},
      {"e3", CATS_ENERGY_E3}, {"e4", CATS_ENERGY_E4}};
  ConfigPtr cfg;
  if (int rc = load(o, cfg)) return rc;
  const int kind = kinds.at(o.kind);
  cats_config_set_energy(cfg.get(), kind);
  TrajectoryPtr traj;
  cats_run_info info;
  if (int rc = run(cfg, o, traj, info)) return rc;

  cats_decay_report r;
  if (auto s = cats_decay_monitor(traj.get(), kind, o.skip, &r); s != CATS_OK) {
    return report_error(s, "decay monitor");
  }
  const std::size_t n = cats_trajectory_sample_count(traj.get());
  cats_sample first, last;
  cats_trajectory_sample(traj.get(), 0, &first);
  cats_trajectory_sample(traj.get(), n - 1, &last);
  std::printf("energy %s over %zu samples (first %zu skipped)\n", o.kind.c_str(), n, o.skip);
  std::printf("  E(t=%g) = %.9g\n  E(t=%g) = %.9g\n", first.t, first.energy, last.t,
              last.energy);
  std::printf("  transitions = %zu\n  nonincreasing fraction = %.6f\n  max increase = %.3e\n",
              r.transitions, r.nonincreasing_fraction, r.max_violation);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-difference simulator for a predator-prey chemo-alarm-taxis system"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cats_version()));
  Options o;

  auto* eq = app.add_subcommand("equilibria", "Print the eight constant steady states");
  eq->add_option("config", o.config, "Config file")->required();

  auto* check = app.add_subcommand("check", "Evaluate the parameter conditions");
  check->add_option("config", o.config, "Config file")->required();
  check->add_option("--target", o.target, "Expected limit")
      ->required()
      ->check(CLI::IsMember({"coexistence", "trivial", "prey-vanishing", "primary-vanishing"}));
  check->add_option("--sup-v", o.sup_v, "Uniform bound of v")->check(CLI::PositiveNumber);
  check->add_option("--sup-w", o.sup_w, "Uniform bound of w")->check(CLI::PositiveNumber);

  auto* sim = app.add_subcommand("simulate", "Run and compare against the target");
  auto* lya = app.add_subcommand("lyapunov", "Run with energy recording");
  for (auto* sub : {sim, lya}) {
    sub->add_option("config", o.config, "Config file")->required();
    sub->add_option("--out", o.out, "Output directory")->required();
    sub->add_option("--nodes", o.nodes, "Override nodes per axis");
    sub->add_option("--t-end", o.t_end, "Override the horizon");
  }
  sim->add_option("--tol", o.tol, "Verdict tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  lya->add_option("--kind", o.kind, "Functional")
      ->required()
      ->check(CLI::IsMember({"e1", "e2", "e3", "e4"}));
  lya->add_option("--skip", o.skip, "Leading samples ignored by the monitor")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return kExitUsage;
  }

  if (eq->parsed()) return cmd_equilibria(o);
  if (check->parsed()) return cmd_check(o);
  if (sim->parsed()) return cmd_simulate(o);
  return cmd_lyapunov(o);
}
