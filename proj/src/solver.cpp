#include "cats/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cats/lyapunov.hpp"
#include "stencil.hpp"

namespace cats {

const Field& field(const State& s, FieldName name) noexcept {
  switch (name) {
    case FieldName::u: return s.u;
    case FieldName::v: return s.v;
    case FieldName::w: return s.w;
    case FieldName::z: return s.z;
  }
  return s.u;
}

char to_char(FieldName name) noexcept {
  switch (name) {
    case FieldName::u: return 'u';
    case FieldName::v: return 'v';
    case FieldName::w: return 'w';
    case FieldName::z: return 'z';
  }
  return '?';
}

std::string_view to_string(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::ReachedTEnd: return "ReachedTEnd";
    case RunStatus::ConvergedEarly: return "ConvergedEarly";
    case RunStatus::Aborted: return "Aborted";
  }
  return "unknown";
}

State initial_state(const Grid& grid) {
  State s{0.0, Field(grid), Field(grid), Field(grid), Field(grid)};
  const std::size_t n = grid.node_count();
  for (std::size_t k = 0; k < n; ++k) {
    double r2 = 0.0;
    std::size_t rest = k;
    for (int a = grid.ndim - 1; a >= 0; --a) {
      const double x = grid.coordinate(a, rest % grid.dims[a]);
      rest /= grid.dims[a];
      r2 += x * x;
    }
    s.u[k] = std::exp(-0.1 * r2);
    s.v[k] = 3.0 * std::exp(-0.3 * r2);
    s.w[k] = 2.0 * std::exp(-0.2 * r2);
    s.z[k] = std::exp(-0.1 * r2);
  }
  return s;
}

State uniform_state(const Grid& grid, double u, double v, double w, double z) {
  return {0.0, Field(grid, u), Field(grid, v), Field(grid, w), Field(grid, z)};
}

void validate(const SimConfig& cfg) {
  validate(cfg.params);
  const auto bad = [](const char* key, const std::string& why) {
    throw Error(ErrorCode::BadValue, std::string(key) + ": " + why);
  };
  if (cfg.grid.ndim < 1 || cfg.grid.ndim > 3) bad("ndim", "must be 1, 2 or 3");
  if (cfg.grid.nodes < 3) bad("nodes", "must be at least 3");
  if (!(cfg.grid.hi > cfg.grid.lo)) bad("hi", "must exceed lo");
  if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) bad("t_end", "must be positive");
  if (!(cfg.dt >= 0.0) || !std::isfinite(cfg.dt)) bad("dt", "must be >= 0");
  if (!(cfg.record_every > 0.0) || !std::isfinite(cfg.record_every)) {
    bad("record_every", "must be positive");
  }
  if (cfg.stop_tol && !(*cfg.stop_tol > 0.0)) bad("stop_tol", "must be positive");
}

double stable_dt(const State& state, const Params& p) {
  const Grid& g = state.grid();
  const double h2 = g.h * g.h;
  const double dims2 = 2.0 * g.ndim;
  const double max_d = std::max({p.d1, p.d2, p.d3, p.d4});
  double max_vw = 0.0;
  for (std::size_t k = 0; k < state.v.size(); ++k) {
    max_vw = std::max(max_vw, std::abs(state.v[k] * state.w[k]));
  }
  const double max_z = linf_norm(state.z);
  const double taxis = std::max({p.chi1 * max_vw, p.chi2 * max_z, p.xi * max_z});

  double bound = h2 / (dims2 * max_d);
  if (taxis > 0.0) bound = std::min(bound, h2 / (dims2 * taxis));
  return std::min(kDtSafety * bound, kDtCap);
}

Stepper::Stepper(const Params& p, const Grid& grid)
    : p_(p), grid_(grid), vw_(grid.node_count()) {
  for (auto& r : rate_) r.resize(grid.node_count());
}

void Stepper::advance(State& state, double dt) {
  if (!(state.grid() == grid_)) {
    throw Error(ErrorCode::GridMismatch, "state grid differs from stepper grid");
  }
  const std::size_t n = grid_.node_count();
  const double* u = state.u.values().data();
  const double* v = state.v.values().data();
  const double* w = state.w.values().data();
  const double* z = state.z.values().data();
  double* vw = vw_.data();
  double* ru = rate_[0].data();
  double* rv = rate_[1].data();
  double* rw = rate_[2].data();
  double* rz = rate_[3].data();

  for (std::size_t k = 0; k < n; ++k) {
    vw[k] = v[k] * w[k];
    const Rates r = reaction_terms(u[k], v[k], w[k], z[k], p_);
    ru[k] = r.du;
    rv[k] = r.dv;
    rw[k] = r.dw;
    rz[k] = r.dz;
  }

  const double inv_h2 = 1.0 / (grid_.h * grid_.h);
  const double d1 = p_.d1 * inv_h2, d2 = p_.d2 * inv_h2;
  const double d3 = p_.d3 * inv_h2, d4 = p_.d4 * inv_h2;
  // Attractive terms enter with a minus sign, the repulsive one with a plus.
  const double c1 = -0.5 * p_.chi1 * inv_h2;
  const double c2 = -0.5 * p_.chi2 * inv_h2;
  const double c3 = 0.5 * p_.xi * inv_h2;

  for (int a = 0; a < grid_.ndim; ++a) {
    detail::sweep_axis(grid_, a, [&](std::size_t k, std::ptrdiff_t om,
                                     std::ptrdiff_t op) {
      const std::size_t m = k + om, q = k + op;
      const double dzp = z[q] - z[k], dzm = z[k] - z[m];
      ru[k] += d1 * (u[m] + u[q] - 2.0 * u[k]) +
               c1 * ((u[k] + u[q]) * (vw[q] - vw[k]) -
                     (u[m] + u[k]) * (vw[k] - vw[m]));
      rv[k] += d2 * (v[m] + v[q] - 2.0 * v[k]) +
               c2 * ((v[k] + v[q]) * dzp - (v[m] + v[k]) * dzm);
      rw[k] += d3 * (w[m] + w[q] - 2.0 * w[k]) +
               c3 * ((w[k] + w[q]) * dzp - (w[m] + w[k]) * dzm);
      rz[k] += d4 * (z[m] + z[q] - 2.0 * z[k]);
    });
  }

  const double* old[4] = {u, v, w, z};
  std::uint64_t clamps = 0;
  for (int f = 0; f < 4; ++f) {
    double* r = rate_[f].data();
    const double* x = old[f];
    bool suspicious = false;
    for (std::size_t k = 0; k < n; ++k) {
      r[k] = x[k] + dt * r[k];
      suspicious |= !(r[k] >= 0.0 && r[k] <= 1e300);
    }
    if (!suspicious) continue;
    for (std::size_t k = 0; k < n; ++k) {
      const double y = r[k];
      if (!std::isfinite(y)) {
        std::ostringstream os;
        os << "non-finite value in field " << "uvwz"[f] << " at node " << k;
        throw Error(ErrorCode::NonFiniteState, os.str());
      }
      if (y < 0.0) {
        if (y > kClampFloor) {
          r[k] = 0.0;
          ++clamps;
        } else {
          std::ostringstream os;
          os << "field " << "uvwz"[f] << " reached " << y << " at node " << k
             << "; reduce dt";
          throw Error(ErrorCode::NegativeBlowup, os.str());
        }
      }
    }
  }

  state.u.swap_values(rate_[0]);
  state.v.swap_values(rate_[1]);
  state.w.swap_values(rate_[2]);
  state.z.swap_values(rate_[3]);
  state.t += dt;
  clamps_ += clamps;
}

State step(const State& state, const Params& p, double dt,
           std::uint64_t& clamp_count) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  Stepper stepper(p, state.grid());
  State next = state;
  stepper.advance(next, dt);
  clamp_count += stepper.clamp_count();
  return next;
}

namespace {

std::array<double, 4> distances(const State& s, const EquilibriumPoint& e) {
  return {linf_distance(s.u, e.u), linf_distance(s.v, e.v),
          linf_distance(s.w, e.w), linf_distance(s.z, e.z)};
}

}  // namespace

Trajectory simulate(const SimConfig& cfg) {
  validate(cfg);
  return simulate(cfg, initial_state(cfg.grid.build()));
}

Trajectory simulate(const SimConfig& cfg, State state) {
  validate(cfg);
  if (!(state.grid() == cfg.grid.build())) {
    throw Error(ErrorCode::GridMismatch,
                "initial state does not live on the configured grid");
  }
  const Params& p = cfg.params;

  Trajectory traj;
  if (cfg.target) traj.target = equilibrium(p, *cfg.target);
  std::optional<EnergyKind> energy_kind;
  if (cfg.energy) {
    energy_kind = make_energy_kind(*cfg.energy, p);
    traj.energy = cfg.energy;
  }

  const bool auto_dt = cfg.dt == 0.0;
  const double eps = 1e-12 * cfg.t_end;
  double sup_v = linf_norm(state.v), sup_w = linf_norm(state.w);

  const auto record = [&] {
    sup_v = std::max(sup_v, linf_norm(state.v));
    sup_w = std::max(sup_w, linf_norm(state.w));
    Sample smp;
    smp.t = state.t;
    if (traj.target) smp.distance = distances(state, *traj.target);
    if (energy_kind) smp.energy = eval_energy(state, *energy_kind, p);
    smp.mass = {integrate(state.u), integrate(state.v), integrate(state.w)};
    smp.sup_v = sup_v;
    smp.sup_w = sup_w;
    traj.samples.push_back(smp);
  };
  const auto converged = [&] {
    if (!cfg.stop_tol || !traj.samples.back().distance) return false;
    const auto& d = *traj.samples.back().distance;
    return *std::max_element(d.begin(), d.end()) < *cfg.stop_tol;
  };

  Stepper stepper(p, state.grid());
  double dt = auto_dt ? stable_dt(state, p) : cfg.dt;
  traj.dt_first = traj.dt_min = traj.dt_max = dt;
  const std::uint64_t updates_per_step = 4 * state.grid().node_count();

  record();
  std::size_t next_sample = 1;
  std::size_t since_refresh = 0;
  traj.status = RunStatus::ReachedTEnd;

  if (!converged()) {
    while (cfg.t_end - state.t > eps) {
      if (auto_dt && since_refresh == kDtRefreshSteps) {
        dt = stable_dt(state, p);
        traj.dt_min = std::min(traj.dt_min, dt);
        traj.dt_max = std::max(traj.dt_max, dt);
        sup_v = std::max(sup_v, linf_norm(state.v));
        sup_w = std::max(sup_w, linf_norm(state.w));
        since_refresh = 0;
      }
      // Shorten the step that would overshoot the next sample or t_end so
      // samples sit exactly on the record grid.
      const double landing = std::min(
          cfg.t_end, static_cast<double>(next_sample) * cfg.record_every);
      const double remaining = landing - state.t;
      const bool lands = remaining - dt <= eps;
      const double h = lands ? remaining : dt;
      const double t_before = state.t;
      try {
        stepper.advance(state, h);
        if (lands) state.t = landing;
      } catch (const Error& e) {
        std::ostringstream os;
        os << "t=" << t_before << ": " << e.what();
        traj.abort = AbortInfo{e.code(), t_before, os.str()};
        traj.status = RunStatus::Aborted;
        break;
      }
      ++traj.steps;
      ++since_refresh;
      traj.node_updates += updates_per_step;

      const bool at_end = cfg.t_end - state.t <= eps;
      const double next_time = static_cast<double>(next_sample) * cfg.record_every;
      if (at_end || state.t >= next_time - eps) {
        record();
        while (static_cast<double>(next_sample) * cfg.record_every <=
               state.t + eps) {
          ++next_sample;
        }
        if (converged()) {
          traj.status = RunStatus::ConvergedEarly;
          break;
        }
      }
    }
  } else {
    traj.status = RunStatus::ConvergedEarly;
  }

  traj.clamp_count = stepper.clamp_count();
  traj.final_state = std::move(state);
  return traj;
}

}  // namespace cats
