#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "cats/cats.h"

namespace fs = std::filesystem;

namespace {

std::string config_path(const char* name) {
  return (fs::path(CATS_CONFIG_DIR) / name).string();
}

struct Config {
  cats_config* p = nullptr;
  ~Config() { cats_config_free(p); }
};
struct Traj {
  cats_trajectory* p = nullptr;
  ~Traj() { cats_trajectory_free(p); }
};
struct Report {
  cats_report* p = nullptr;
  ~Report() { cats_report_free(p); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(cats_version()) > 0);
  CHECK(std::string(cats_status_name(CATS_OK)) == "OK");
  CHECK(std::string(cats_status_name(CATS_E_MISSING_KEY)) == "MissingKey");
  CHECK(std::string(cats_status_name(CATS_E_IO)) == "IoFailure");
}

TEST_CASE("null arguments are rejected with a message") {
  CHECK(cats_config_load(nullptr, nullptr) == CATS_E_INVALID_ARGUMENT);
  CHECK(std::strlen(cats_last_error()) > 0);
  CHECK(cats_simulate(nullptr, nullptr) == CATS_E_INVALID_ARGUMENT);
  cats_config_free(nullptr);
  cats_trajectory_free(nullptr);
  cats_report_free(nullptr);
}

TEST_CASE("config load, parse errors and setters") {
  Config cfg;
  REQUIRE(cats_config_load(config_path("example5_2.cfg").c_str(), &cfg.p) == CATS_OK);
  cats_params p;
  REQUIRE(cats_config_params(cfg.p, &p) == CATS_OK);
  CHECK(p.a2 == 1.0);
  CHECK(p.a3 == 1.5);
  CHECK(p.gamma == 2.0);
  int target = -2;
  CHECK(cats_config_target(cfg.p, &target) == CATS_OK);
  CHECK(target == CATS_SECONDARY_ONLY);
  CHECK(cats_config_set_target(cfg.p, -1) == CATS_OK);
  CHECK(cats_config_target(cfg.p, &target) == CATS_OK);
  CHECK(target == -1);
  CHECK(cats_config_set_target(cfg.p, 8) == CATS_E_INVALID_ARGUMENT);
  CHECK(cats_config_set_nodes(cfg.p, 2) == CATS_E_TOO_FEW_NODES);
  CHECK(cats_config_set_t_end(cfg.p, 0.0) == CATS_E_BAD_VALUE);
  CHECK(cats_config_set_energy(cfg.p, 7) == CATS_E_INVALID_ARGUMENT);
  CHECK(cats_config_set_nodes(cfg.p, 9) == CATS_OK);
  const std::string text = cats_config_text(cfg.p);
  CHECK(text.find("nodes = 9\n") != std::string::npos);

  Config bad;
  CHECK(cats_config_parse("gamma = 2\n", &bad.p) == CATS_E_MISSING_KEY);
  CHECK(bad.p == nullptr);
  CHECK(std::string(cats_last_error()).find("d1") != std::string::npos);
  CHECK(cats_config_load("/nonexistent.cfg", &bad.p) == CATS_E_IO);
  Config reparsed;
  CHECK(cats_config_parse(text.c_str(), &reparsed.p) == CATS_OK);
}

TEST_CASE("equilibria through the C interface") {
  cats_params p;
  {
    Config cfg;
    REQUIRE(cats_config_load(config_path("example5_1.cfg").c_str(), &cfg.p) == CATS_OK);
    REQUIRE(cats_config_params(cfg.p, &p) == CATS_OK);
  }
  cats_equilibrium e;
  REQUIRE(cats_coexistence_equilibrium(&p, &e) == CATS_OK);
  CHECK(e.kind == CATS_COEXISTENCE);
  CHECK(e.u == doctest::Approx(9.0 / 7).epsilon(1e-14));
  CHECK(e.v == doctest::Approx(3.0 / 7).epsilon(1e-14));
  CHECK(e.w == doctest::Approx(1.0 / 7).epsilon(1e-14));
  CHECK(e.z == doctest::Approx(2.0 / 7).epsilon(1e-14));
  CHECK(e.admissible == 1);

  cats_equilibrium all[8];
  REQUIRE(cats_enumerate_equilibria(&p, all) == CATS_OK);
  for (int k = 0; k < 8; ++k) {
    CHECK(all[k].kind == k);
    CHECK(all[k].residual < 1e-12);
  }
  double r[4];
  REQUIRE(cats_reaction_terms(e.u, e.v, e.w, e.z, &p, r) == CATS_OK);
  for (double x : r) CHECK(std::abs(x) < 1e-14);

  CHECK(std::string(cats_equilibrium_kind_name(CATS_PREY_VANISHING)) == "prey-vanishing");
  CHECK(cats_equilibrium_kind_parse("primary-vanishing") == CATS_PRIMARY_VANISHING);
  CHECK(cats_equilibrium_kind_parse("nothing") == -1);

  cats_params bad = p;
  bad.gamma = -1;
  CHECK(cats_enumerate_equilibria(&bad, all) == CATS_E_BAD_VALUE);
}

TEST_CASE("condition reports through the C interface") {
  cats_params p;
  {
    Config cfg;
    REQUIRE(cats_config_load(config_path("example5_2.cfg").c_str(), &cfg.p) == CATS_OK);
    REQUIRE(cats_config_params(cfg.p, &p) == CATS_OK);
  }
  Report cond;
  REQUIRE(cats_check_conditions(&p, CATS_COND01, 0, 0, &cond.p) == CATS_OK);
  CHECK(cats_report_clause_count(cond.p) == 3);
  CHECK(cats_report_all_satisfied(cond.p) == 0);
  cats_clause c;
  REQUIRE(cats_report_clause(cond.p, 0, &c) == CATS_OK);
  CHECK(std::strlen(c.label) > 0);
  CHECK(c.margin == doctest::Approx(c.rhs - c.lhs).epsilon(1e-14));
  CHECK(cats_report_clause(cond.p, 3, &c) == CATS_E_INVALID_ARGUMENT);

  Report thm;
  REQUIRE(cats_check_conditions(&p, CATS_THM13, 1.0, 1.0, &thm.p) == CATS_OK);
  CHECK(cats_report_clause_count(thm.p) > 0);
  CHECK(std::isfinite(cats_report_gamma1(thm.p)));
  CHECK(cats_check_conditions(&p, 9, 1.0, 1.0, &thm.p) == CATS_E_INVALID_ARGUMENT);
}

TEST_CASE("simulate, inspect and write through the C interface") {
  Config cfg;
  REQUIRE(cats_config_load(config_path("example5_2.cfg").c_str(), &cfg.p) == CATS_OK);
  REQUIRE(cats_config_set_nodes(cfg.p, 6) == CATS_OK);
  REQUIRE(cats_config_set_t_end(cfg.p, 4.0) == CATS_OK);
  REQUIRE(cats_config_set_energy(cfg.p, CATS_ENERGY_E2) == CATS_OK);
  Traj traj;
  REQUIRE(cats_simulate(cfg.p, &traj.p) == CATS_OK);

  cats_run_info info;
  REQUIRE(cats_trajectory_info(traj.p, &info) == CATS_OK);
  CHECK(info.status == CATS_RUN_REACHED_T_END);
  CHECK(info.abort_code == CATS_OK);
  CHECK(info.final_t == 4.0);
  CHECK(info.steps > 0);
  CHECK(info.dt_min <= info.dt_max);
  CHECK(std::string(cats_trajectory_abort_message(traj.p)).empty());

  const size_t n = cats_trajectory_sample_count(traj.p);
  CHECK(n == 41);
  cats_sample s;
  REQUIRE(cats_trajectory_sample(traj.p, n - 1, &s) == CATS_OK);
  CHECK(s.t == 4.0);
  CHECK(s.has_distance == 1);
  CHECK(s.has_energy == 1);
  CHECK(cats_trajectory_sample(traj.p, n, &s) == CATS_E_INVALID_ARGUMENT);

  size_t count = 0;
  CHECK(cats_trajectory_field(traj.p, 'u', nullptr, 0, &count) == CATS_OK);
  CHECK(count == 36);
  std::vector<double> u(count);
  REQUIRE(cats_trajectory_field(traj.p, 'u', u.data(), u.size(), &count) == CATS_OK);
  for (double x : u) CHECK(x >= 0.0);
  CHECK(cats_trajectory_field(traj.p, 'q', u.data(), u.size(), &count) ==
        CATS_E_INVALID_ARGUMENT);

  cats_verdict v;
  REQUIRE(cats_convergence_verdict(traj.p, -1, 10.0, &v) == CATS_OK);
  CHECK(v.pass == 1);
  CHECK(cats_convergence_verdict(traj.p, CATS_COEXISTENCE, 1.0, &v) ==
        CATS_E_INVALID_ARGUMENT);

  cats_decay_report d;
  REQUIRE(cats_decay_monitor(traj.p, CATS_ENERGY_E2, 1, &d) == CATS_OK);
  CHECK(d.transitions == n - 2);
  CHECK(cats_decay_monitor(traj.p, CATS_ENERGY_E1, 1, &d) == CATS_E_KIND_MISMATCH);

  cats_decay_fit f;
  REQUIRE(cats_fit_decay(traj.p, 0.5, &f) == CATS_OK);
  CHECK(f.rate > 0.0);
  CHECK(f.used == (n + 1) / 2);

  const fs::path dir = fs::temp_directory_path() / "cats_test_c_api";
  fs::remove_all(dir);
  REQUIRE(cats_write_run_outputs(cfg.p, traj.p, dir.string().c_str()) == CATS_OK);
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(cats_write_snapshot(traj.p, 'w', (dir / "extra.cats1").string().c_str()) == CATS_OK);
  CHECK(cats_write_snapshot(traj.p, 'x', (dir / "bad.cats1").string().c_str()) ==
        CATS_E_INVALID_ARGUMENT);
  CHECK(cats_write_timeseries(traj.p, "/nonexistent/dir/ts.csv") == CATS_E_IO);
}

TEST_CASE("an unstable step yields an aborted trajectory, not an error") {
  Config cfg;
  REQUIRE(cats_config_load(config_path("example5_1.cfg").c_str(), &cfg.p) == CATS_OK);
  std::string text = cats_config_text(cfg.p);
  text.replace(text.find("dt = auto"), 9, "dt = 0.005");
  Config fixed;
  REQUIRE(cats_config_parse(text.c_str(), &fixed.p) == CATS_OK);
  REQUIRE(cats_config_set_nodes(fixed.p, 41) == CATS_OK);
  REQUIRE(cats_config_set_t_end(fixed.p, 1.0) == CATS_OK);
  Traj traj;
  REQUIRE(cats_simulate(fixed.p, &traj.p) == CATS_OK);
  cats_run_info info;
  REQUIRE(cats_trajectory_info(traj.p, &info) == CATS_OK);
  CHECK(info.status == CATS_RUN_ABORTED);
  CHECK((info.abort_code == CATS_E_NEGATIVE_BLOWUP || info.abort_code == CATS_E_NONFINITE_STATE));
  CHECK(std::strlen(cats_trajectory_abort_message(traj.p)) > 0);
  cats_verdict v;
  CHECK(cats_convergence_verdict(traj.p, -1, 1.0, &v) == CATS_E_ABORTED_TRAJECTORY);
}
