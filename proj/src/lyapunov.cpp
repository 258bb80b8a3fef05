#include "cats/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "cats/error.hpp"

namespace cats {

std::string_view to_string(EnergyTag tag) noexcept {
  switch (tag) {
    case EnergyTag::E1_Coexistence: return "e1";
    case EnergyTag::E2_SecondaryOnly: return "e2";
    case EnergyTag::E3_PreyVanishing: return "e3";
    case EnergyTag::E4_PrimaryVanishing: return "e4";
  }
  return "unknown";
}

std::optional<EnergyTag> parse_energy_tag(std::string_view name) {
  if (name == "e1") return EnergyTag::E1_Coexistence;
  if (name == "e2") return EnergyTag::E2_SecondaryOnly;
  if (name == "e3") return EnergyTag::E3_PreyVanishing;
  if (name == "e4") return EnergyTag::E4_PrimaryVanishing;
  return std::nullopt;
}

EquilibriumKind expected_kind(EnergyTag tag) noexcept {
  switch (tag) {
    case EnergyTag::E1_Coexistence: return EquilibriumKind::Coexistence;
    case EnergyTag::E2_SecondaryOnly: return EquilibriumKind::SecondaryOnly;
    case EnergyTag::E3_PreyVanishing: return EquilibriumKind::PreyVanishing;
    case EnergyTag::E4_PrimaryVanishing: return EquilibriumKind::PrimaryVanishing;
  }
  return EquilibriumKind::Coexistence;
}

namespace {

// Which components enter through x - x* - x* ln(x/x*).
struct LogMask {
  bool u, v, w;
};

LogMask log_mask(EnergyTag tag) {
  switch (tag) {
    case EnergyTag::E1_Coexistence: return {true, true, true};
    case EnergyTag::E2_SecondaryOnly: return {true, false, false};
    case EnergyTag::E3_PreyVanishing: return {true, true, false};
    case EnergyTag::E4_PrimaryVanishing: return {true, false, true};
  }
  return {true, true, true};
}

void check_kind(const EnergyKind& kind) {
  if (kind.equilibrium.kind != expected_kind(kind.tag)) {
    std::ostringstream os;
    os << "functional " << to_string(kind.tag) << " needs the "
       << to_string(expected_kind(kind.tag)) << " steady state, got "
       << to_string(kind.equilibrium.kind);
    throw Error(ErrorCode::KindMismatch, os.str());
  }
}

void check_log_levels(const EnergyKind& kind) {
  const auto mask = log_mask(kind.tag);
  const auto& e = kind.equilibrium;
  if (!e.admissible || (mask.u && !(e.u > 0)) || (mask.v && !(e.v > 0)) ||
      (mask.w && !(e.w > 0))) {
    std::ostringstream os;
    os << "functional " << to_string(kind.tag) << ": steady state ("
       << e.u << ", " << e.v << ", " << e.w << ", " << e.z
       << ") lacks strictly positive log-bearing components";
    throw Error(ErrorCode::InadmissibleEquilibrium, os.str());
  }
}

// x - x* - x* ln(x/x*), with x floored inside the logarithm only.
inline double entropy_term(double x, double level, std::size_t& clamps) {
  double arg = x;
  if (arg < kLogFloor) {
    arg = kLogFloor;
    ++clamps;
  }
  return x - level - level * std::log(arg / level);
}

}  // namespace

EnergyKind make_energy_kind(EnergyTag tag, const Params& p) {
  EnergyKind kind{tag, equilibrium(p, expected_kind(tag))};
  check_log_levels(kind);
  return kind;
}

EnergyValue eval_energy_counted(const State& state, const EnergyKind& kind,
                                const Params& p) {
  check_kind(kind);
  check_log_levels(kind);
  const auto mask = log_mask(kind.tag);
  const auto& e = kind.equilibrium;
  const double g1 = gamma1(p), g2 = gamma2(p);
  const Grid& grid = state.grid();

  EnergyValue out;
  for (std::size_t k = 0; k < state.u.size(); ++k) {
    const double u = state.u[k], v = state.v[k], w = state.w[k], z = state.z[k];
    if (u < 0.0 || v < 0.0 || w < 0.0) {
      std::ostringstream os;
      os << "negative population at node " << k << " (" << u << ", " << v
         << ", " << w << ")";
      throw Error(ErrorCode::NegativeField, os.str());
    }
    double density = entropy_term(u, e.u, out.log_clamps);
    density += mask.v ? g1 * entropy_term(v, e.v, out.log_clamps)
                      : g1 * v + 0.5 * v * v;
    density += mask.w ? g2 * entropy_term(w, e.w, out.log_clamps)
                      : g2 * w + 0.5 * w * w;
    density += 0.5 * (z - e.z) * (z - e.z);
    out.value += node_weight(grid, k) * density;
  }
  return out;
}

double eval_f(const State& state, const EnergyKind& kind) {
  check_kind(kind);
  const auto& e = kind.equilibrium;
  const Grid& grid = state.grid();
  double sum = 0.0;
  for (std::size_t k = 0; k < state.u.size(); ++k) {
    const double du = state.u[k] - e.u, dv = state.v[k] - e.v;
    const double dw = state.w[k] - e.w, dz = state.z[k] - e.z;
    sum += node_weight(grid, k) * (du * du + dv * dv + dw * dw + dz * dz);
  }
  return sum;
}

DecayReport decay_monitor(std::span<const double> energies,
                          std::size_t skip_leading) {
  DecayReport r;
  if (energies.size() <= skip_leading + 1) return r;
  std::size_t nonincreasing = 0;
  for (std::size_t k = skip_leading + 1; k < energies.size(); ++k) {
    const double jump = energies[k] - energies[k - 1];
    if (jump <= 0.0) {
      ++nonincreasing;
    } else {
      r.max_violation = std::max(r.max_violation, jump);
    }
    ++r.transitions;
  }
  r.nonincreasing_fraction =
      static_cast<double>(nonincreasing) / static_cast<double>(r.transitions);
  return r;
}

DecayReport decay_monitor(const Trajectory& traj, EnergyTag tag,
                          std::size_t skip_leading) {
  if (!traj.energy) {
    throw Error(ErrorCode::MissingSamples,
                "trajectory was recorded without energy values");
  }
  if (*traj.energy != tag) {
    std::ostringstream os;
    os << "trajectory carries " << to_string(*traj.energy) << ", asked for "
       << to_string(tag);
    throw Error(ErrorCode::KindMismatch, os.str());
  }
  std::vector<double> values;
  values.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    if (!s.energy) {
      throw Error(ErrorCode::MissingSamples, "sample without energy value");
    }
    values.push_back(*s.energy);
  }
  return decay_monitor(values, skip_leading);
}

}  // namespace cats
