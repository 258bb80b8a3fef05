#pragma once

// Discrete energy functionals certifying convergence to a steady state, the
// matching squared-distance functionals, and a monotone-decay monitor.
//
// For a log-bearing component x with equilibrium level x* the integrand is
// x - x* - x* ln(x/x*) >= 0. Vanishing components enter through
// G x + x^2/2 instead, z always through (z - z*)^2 / 2.

#include <cstddef>
#include <span>
#include <string_view>
#include <optional>

#include "cats/model.hpp"
#include "cats/solver.hpp"

namespace cats {

std::string_view to_string(EnergyTag tag) noexcept;
std::optional<EnergyTag> parse_energy_tag(std::string_view name);

EquilibriumKind expected_kind(EnergyTag tag) noexcept;

struct EnergyKind {
  EnergyTag tag = EnergyTag::E1_Coexistence;
  EquilibriumPoint equilibrium;
};

// Pairs a tag with its steady state for p. Throws InadmissibleEquilibrium
// when a component entering a logarithm is not strictly positive.
EnergyKind make_energy_kind(EnergyTag tag, const Params& p);

inline constexpr double kLogFloor = 1e-12;

struct EnergyValue {
  double value = 0.0;
  std::size_t log_clamps = 0;  // nodes whose log argument hit kLogFloor
};

// Throws KindMismatch, NegativeField, InadmissibleEquilibrium.
EnergyValue eval_energy_counted(const State& state, const EnergyKind& kind,
                                const Params& p);

inline double eval_energy(const State& state, const EnergyKind& kind,
                          const Params& p) {
  return eval_energy_counted(state, kind, p).value;
}

// Sum of the four integrated squared deviations. Throws KindMismatch.
double eval_f(const State& state, const EnergyKind& kind);

struct DecayReport {
  double max_violation = 0.0;  // largest E(t_{k+1}) - E(t_k), 0 if none
  double nonincreasing_fraction = 1.0;
  std::size_t transitions = 0;
};

// Ties count as nonincreasing. skip_leading drops that many leading samples.
DecayReport decay_monitor(std::span<const double> energies,
                          std::size_t skip_leading = 0);

// Throws MissingSamples when the trajectory lacks energies, KindMismatch
// when they were recorded for another functional.
DecayReport decay_monitor(const Trajectory& traj, EnergyTag tag,
                          std::size_t skip_leading = 0);

}  // namespace cats
