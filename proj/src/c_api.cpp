#include "cats/cats.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "cats/config.hpp"
#include "cats/diagnostics.hpp"
#include "cats/error.hpp"
#include "cats/lyapunov.hpp"
#include "cats/model.hpp"
#include "cats/output.hpp"
#include "cats/solver.hpp"

struct cats_config {
  cats::SimConfig cfg;
  std::string text;
};

struct cats_report {
  cats::ConditionReport report;
};

struct cats_trajectory {
  cats::Trajectory traj;
};

namespace {

thread_local std::string g_last_error;

cats_status to_status(cats::ErrorCode code) {
  using cats::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return CATS_E_INVALID_ARGUMENT;
    case ErrorCode::BadExtent: return CATS_E_BAD_EXTENT;
    case ErrorCode::TooFewNodes: return CATS_E_TOO_FEW_NODES;
    case ErrorCode::GridMismatch: return CATS_E_GRID_MISMATCH;
    case ErrorCode::DegenerateDenominator: return CATS_E_DEGENERATE_DENOMINATOR;
    case ErrorCode::InadmissibleEquilibrium: return CATS_E_INADMISSIBLE_EQUILIBRIUM;
    case ErrorCode::NegativeBlowup: return CATS_E_NEGATIVE_BLOWUP;
    case ErrorCode::NonFiniteState: return CATS_E_NONFINITE_STATE;
    case ErrorCode::KindMismatch: return CATS_E_KIND_MISMATCH;
    case ErrorCode::NegativeField: return CATS_E_NEGATIVE_FIELD;
    case ErrorCode::MissingSamples: return CATS_E_MISSING_SAMPLES;
    case ErrorCode::TooFewSamples: return CATS_E_TOO_FEW_SAMPLES;
    case ErrorCode::AllBelowFloor: return CATS_E_ALL_BELOW_FLOOR;
    case ErrorCode::AbortedTrajectory: return CATS_E_ABORTED_TRAJECTORY;
    case ErrorCode::MissingKey: return CATS_E_MISSING_KEY;
    case ErrorCode::BadValue: return CATS_E_BAD_VALUE;
    case ErrorCode::UnknownKey: return CATS_E_UNKNOWN_KEY;
    case ErrorCode::IoFailure: return CATS_E_IO;
  }
  return CATS_E_INTERNAL;
}

cats_status fail(cats_status status, const char* message) {
  g_last_error = message;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
cats_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return CATS_OK;
  } catch (const cats::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CATS_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CATS_E_INTERNAL, e.what());
  } catch (...) {
    return fail(CATS_E_INTERNAL, "unknown error");
  }
}

#define CATS_REQUIRE(cond)                                             \
  do {                                                                 \
    if (!(cond)) return fail(CATS_E_INVALID_ARGUMENT, "null argument"); \
  } while (0)

cats::Params from_c(const cats_params& p) {
  return {p.d1,  p.d2,  p.d3,  p.d4,  p.chi1, p.chi2,  p.xi,
          p.mu1, p.mu2, p.mu3, p.a1,  p.a2,   p.a3,    p.a4,
          p.a5,  p.a6,  p.alpha, p.beta, p.gamma};
}

cats_params to_c(const cats::Params& p) {
  return {p.d1,  p.d2,  p.d3,  p.d4,  p.chi1, p.chi2,  p.xi,
          p.mu1, p.mu2, p.mu3, p.a1,  p.a2,   p.a3,    p.a4,
          p.a5,  p.a6,  p.alpha, p.beta, p.gamma};
}

bool valid_kind(int kind) { return kind >= 0 && kind < 8; }

cats_equilibrium to_c(const cats::EquilibriumPoint& e, const cats::Params& p) {
  return {static_cast<int>(e.kind), e.u,          e.v,
          e.w,                      e.z,          e.admissible ? 1 : 0,
          cats::reaction_residual(e, p)};
}

std::optional<cats::FieldName> field_from_char(char c) {
  switch (c) {
    case 'u': return cats::FieldName::u;
    case 'v': return cats::FieldName::v;
    case 'w': return cats::FieldName::w;
    case 'z': return cats::FieldName::z;
  }
  return std::nullopt;
}

}  // namespace

extern "C" {

const char* cats_version(void) { return CATS_VERSION; }

const char* cats_last_error(void) { return g_last_error.c_str(); }

const char* cats_status_name(cats_status status) {
  switch (status) {
    case CATS_OK: return "OK";
    case CATS_E_INVALID_ARGUMENT: return "InvalidArgument";
    case CATS_E_BAD_EXTENT: return "BadExtent";
    case CATS_E_TOO_FEW_NODES: return "TooFewNodes";
    case CATS_E_GRID_MISMATCH: return "GridMismatch";
    case CATS_E_DEGENERATE_DENOMINATOR: return "DegenerateDenominator";
    case CATS_E_INADMISSIBLE_EQUILIBRIUM: return "InadmissibleEquilibrium";
    case CATS_E_NEGATIVE_BLOWUP: return "NegativeBlowup";
    case CATS_E_NONFINITE_STATE: return "NonFiniteState";
    case CATS_E_KIND_MISMATCH: return "KindMismatch";
    case CATS_E_NEGATIVE_FIELD: return "NegativeField";
    case CATS_E_MISSING_SAMPLES: return "MissingSamples";
    case CATS_E_TOO_FEW_SAMPLES: return "TooFewSamples";
    case CATS_E_ALL_BELOW_FLOOR: return "AllBelowFloor";
    case CATS_E_ABORTED_TRAJECTORY: return "AbortedTrajectory";
    case CATS_E_MISSING_KEY: return "MissingKey";
    case CATS_E_BAD_VALUE: return "BadValue";
    case CATS_E_UNKNOWN_KEY: return "UnknownKey";
    case CATS_E_IO: return "IoFailure";
    case CATS_E_INTERNAL: return "Internal";
  }
  return "Unknown";
}

cats_status cats_config_load(const char* path, cats_config** out) {
  CATS_REQUIRE(path && out);
  *out = nullptr;
  return guarded([&] { *out = new cats_config{cats::load_config(path), {}}; });
}

cats_status cats_config_parse(const char* text, cats_config** out) {
  CATS_REQUIRE(text && out);
  *out = nullptr;
  return guarded([&] { *out = new cats_config{cats::parse_config(text), {}}; });
}

void cats_config_free(cats_config* cfg) { delete cfg; }

cats_status cats_config_params(const cats_config* cfg, cats_params* out) {
  CATS_REQUIRE(cfg && out);
  *out = to_c(cfg->cfg.params);
  return CATS_OK;
}

cats_status cats_config_set_nodes(cats_config* cfg, size_t nodes) {
  CATS_REQUIRE(cfg);
  if (nodes < 3) return fail(CATS_E_TOO_FEW_NODES, "at least 3 nodes per axis required");
  cfg->cfg.grid.nodes = nodes;
  return CATS_OK;
}

cats_status cats_config_set_t_end(cats_config* cfg, double t_end) {
  CATS_REQUIRE(cfg);
  if (!(t_end > 0.0)) return fail(CATS_E_BAD_VALUE, "t_end must be positive");
  cfg->cfg.t_end = t_end;
  return CATS_OK;
}

cats_status cats_config_set_energy(cats_config* cfg, int energy) {
  CATS_REQUIRE(cfg);
  if (energy == CATS_ENERGY_NONE) {
    cfg->cfg.energy.reset();
    return CATS_OK;
  }
  if (energy < 0 || energy > 3) return fail(CATS_E_INVALID_ARGUMENT, "unknown energy kind");
  cfg->cfg.energy = static_cast<cats::EnergyTag>(energy);
  return CATS_OK;
}

cats_status cats_config_set_target(cats_config* cfg, int kind) {
  CATS_REQUIRE(cfg);
  if (kind == -1) {
    cfg->cfg.target.reset();
    return CATS_OK;
  }
  if (!valid_kind(kind)) return fail(CATS_E_INVALID_ARGUMENT, "unknown equilibrium kind");
  cfg->cfg.target = static_cast<cats::EquilibriumKind>(kind);
  return CATS_OK;
}

cats_status cats_config_target(const cats_config* cfg, int* out) {
  CATS_REQUIRE(cfg && out);
  *out = cfg->cfg.target ? static_cast<int>(*cfg->cfg.target) : -1;
  return CATS_OK;
}

const char* cats_config_text(cats_config* cfg) {
  if (!cfg) return "";
  cfg->text = cats::format_config(cfg->cfg);
  return cfg->text.c_str();
}

cats_status cats_reaction_terms(double u, double v, double w, double z,
                                const cats_params* p, double out[4]) {
  CATS_REQUIRE(p && out);
  const auto r = cats::reaction_terms(u, v, w, z, from_c(*p));
  out[0] = r.du;
  out[1] = r.dv;
  out[2] = r.dw;
  out[3] = r.dz;
  return CATS_OK;
}

cats_status cats_coexistence_equilibrium(const cats_params* p, cats_equilibrium* out) {
  CATS_REQUIRE(p && out);
  return guarded([&] {
    const auto params = from_c(*p);
    *out = to_c(cats::coexistence_equilibrium(params), params);
  });
}

cats_status cats_enumerate_equilibria(const cats_params* p, cats_equilibrium out[8]) {
  CATS_REQUIRE(p && out);
  return guarded([&] {
    const auto params = from_c(*p);
    cats::validate(params);
    const auto all = cats::enumerate_equilibria(params);
    for (std::size_t i = 0; i < all.size(); ++i) out[i] = to_c(all[i], params);
  });
}

const char* cats_equilibrium_kind_name(int kind) {
  if (!valid_kind(kind)) return "unknown";
  return cats::to_string(static_cast<cats::EquilibriumKind>(kind)).data();
}

int cats_equilibrium_kind_parse(const char* name) {
  if (!name) return -1;
  const auto kind = cats::parse_equilibrium_kind(name);
  return kind ? static_cast<int>(*kind) : -1;
}

cats_status cats_check_conditions(const cats_params* p, int target, double sup_v,
                                  double sup_w, cats_report** out) {
  CATS_REQUIRE(p && out);
  *out = nullptr;
  if (target < CATS_COND01 || target > CATS_THM14_2) {
    return fail(CATS_E_INVALID_ARGUMENT, "unknown condition target");
  }
  return guarded([&] {
    const auto params = from_c(*p);
    cats::validate(params);
    const auto t = static_cast<cats::ConditionTarget>(target);
    auto report = t == cats::ConditionTarget::Cond01
                      ? cats::check_coexistence_conditions(params)
                      : cats::check_theorem_conditions(params, t, sup_v, sup_w);
    *out = new cats_report{std::move(report)};
  });
}

void cats_report_free(cats_report* report) { delete report; }

size_t cats_report_clause_count(const cats_report* report) {
  return report ? report->report.clauses.size() : 0;
}

cats_status cats_report_clause(const cats_report* report, size_t index, cats_clause* out) {
  CATS_REQUIRE(report && out);
  if (index >= report->report.clauses.size()) {
    return fail(CATS_E_INVALID_ARGUMENT, "clause index out of range");
  }
  const auto& c = report->report.clauses[index];
  out->label = c.label.c_str();
  out->text = c.text.c_str();
  out->lhs = c.lhs;
  out->rhs = c.rhs;
  out->margin = c.margin();
  out->relation = c.relation == cats::Relation::Less ? 0 : 1;
  out->rhs_term_count = std::min<std::size_t>(c.rhs_terms.size(), 2);
  out->rhs_terms[0] = out->rhs_terms[1] = 0.0;
  for (std::size_t i = 0; i < out->rhs_term_count; ++i) out->rhs_terms[i] = c.rhs_terms[i];
  out->satisfied = c.satisfied ? 1 : 0;
  return CATS_OK;
}

int cats_report_all_satisfied(const cats_report* report) {
  return report && report->report.all_satisfied ? 1 : 0;
}

double cats_report_gamma1(const cats_report* report) {
  return report ? report->report.gamma1 : 0.0;
}

double cats_report_gamma2(const cats_report* report) {
  return report ? report->report.gamma2 : 0.0;
}

cats_status cats_simulate(const cats_config* cfg, cats_trajectory** out) {
  CATS_REQUIRE(cfg && out);
  *out = nullptr;
  return guarded([&] { *out = new cats_trajectory{cats::simulate(cfg->cfg)}; });
}

void cats_trajectory_free(cats_trajectory* traj) { delete traj; }

cats_status cats_trajectory_info(const cats_trajectory* traj, cats_run_info* out) {
  CATS_REQUIRE(traj && out);
  const auto& t = traj->traj;
  out->status = static_cast<int>(t.status);
  out->steps = t.steps;
  out->clamp_count = t.clamp_count;
  out->node_updates = t.node_updates;
  out->dt_first = t.dt_first;
  out->dt_min = t.dt_min;
  out->dt_max = t.dt_max;
  out->final_t = t.final_state.t;
  out->abort_code = t.abort ? to_status(t.abort->code) : CATS_OK;
  out->abort_t = t.abort ? t.abort->t : 0.0;
  return CATS_OK;
}

const char* cats_trajectory_abort_message(const cats_trajectory* traj) {
  if (!traj || !traj->traj.abort) return "";
  return traj->traj.abort->message.c_str();
}

size_t cats_trajectory_sample_count(const cats_trajectory* traj) {
  return traj ? traj->traj.samples.size() : 0;
}

cats_status cats_trajectory_sample(const cats_trajectory* traj, size_t index,
                                   cats_sample* out) {
  CATS_REQUIRE(traj && out);
  if (index >= traj->traj.samples.size()) {
    return fail(CATS_E_INVALID_ARGUMENT, "sample index out of range");
  }
  const auto& s = traj->traj.samples[index];
  *out = cats_sample{};
  out->t = s.t;
  out->has_distance = s.distance ? 1 : 0;
  if (s.distance) std::memcpy(out->distance, s.distance->data(), sizeof out->distance);
  out->has_energy = s.energy ? 1 : 0;
  out->energy = s.energy.value_or(0.0);
  for (int i = 0; i < 3; ++i) out->mass[i] = s.mass[i];
  out->sup_v = s.sup_v;
  out->sup_w = s.sup_w;
  return CATS_OK;
}

cats_status cats_trajectory_field(const cats_trajectory* traj, char name,
                                  double* values, size_t capacity, size_t* count) {
  CATS_REQUIRE(traj && count);
  const auto f = field_from_char(name);
  if (!f) return fail(CATS_E_INVALID_ARGUMENT, "field must be one of u, v, w, z");
  const auto data = cats::field(traj->traj.final_state, *f).values();
  *count = data.size();
  if (values) std::memcpy(values, data.data(), std::min(capacity, data.size()) * sizeof(double));
  return CATS_OK;
}

cats_status cats_convergence_verdict(const cats_trajectory* traj, int kind, double tol,
                                     cats_verdict* out) {
  CATS_REQUIRE(traj && out);
  return guarded([&] {
    cats::EquilibriumPoint target;
    if (kind == -1) {
      if (!traj->traj.target) {
        throw cats::Error(cats::ErrorCode::MissingSamples, "trajectory has no target");
      }
      target = *traj->traj.target;
    } else if (valid_kind(kind)) {
      // The trajectory keeps no parameters, so only its own target is known.
      if (traj->traj.target && static_cast<int>(traj->traj.target->kind) == kind) {
        target = *traj->traj.target;
      } else {
        throw cats::Error(cats::ErrorCode::InvalidArgument,
                          "verdict kind differs from the trajectory target");
      }
    } else {
      throw cats::Error(cats::ErrorCode::InvalidArgument, "unknown equilibrium kind");
    }
    const auto v = cats::convergence_verdict(traj->traj, target, tol);
    std::memcpy(out->distance, v.distance.data(), sizeof out->distance);
    out->tol = v.tol;
    out->pass = v.pass ? 1 : 0;
  });
}

cats_status cats_decay_monitor(const cats_trajectory* traj, int energy,
                               size_t skip_leading, cats_decay_report* out) {
  CATS_REQUIRE(traj && out);
  if (energy < 0 || energy > 3) return fail(CATS_E_INVALID_ARGUMENT, "unknown energy kind");
  return guarded([&] {
    const auto r = cats::decay_monitor(traj->traj, static_cast<cats::EnergyTag>(energy),
                                       skip_leading);
    *out = {r.max_violation, r.nonincreasing_fraction, r.transitions};
  });
}

cats_status cats_fit_decay(const cats_trajectory* traj, double window_fraction,
                           cats_decay_fit* out) {
  CATS_REQUIRE(traj && out);
  return guarded([&] {
    const auto series = cats::distance_series(traj->traj);
    const auto fit = cats::fit_decay_rate(series, window_fraction);
    *out = {fit.rate, fit.intercept, fit.r_squared, fit.t_start, fit.t_end, fit.used};
  });
}

cats_status cats_write_timeseries(const cats_trajectory* traj, const char* path) {
  CATS_REQUIRE(traj && path);
  return guarded([&] { cats::write_timeseries(traj->traj, path); });
}

cats_status cats_write_snapshot(const cats_trajectory* traj, char name, const char* path) {
  CATS_REQUIRE(traj && path);
  const auto f = field_from_char(name);
  if (!f) return fail(CATS_E_INVALID_ARGUMENT, "field must be one of u, v, w, z");
  return guarded([&] { cats::write_snapshot(traj->traj.final_state, *f, path); });
}

cats_status cats_write_run_outputs(const cats_config* cfg, const cats_trajectory* traj,
                                   const char* dir) {
  CATS_REQUIRE(cfg && traj && dir);
  return guarded([&] { cats::write_run_outputs(cfg->cfg, traj->traj, dir); });
}

}  // extern "C"
