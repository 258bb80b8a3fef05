#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "cats/model.hpp"
#include "cats/solver.hpp"

namespace cats {

struct TimedValue {
  double t = 0.0;
  double value = 0.0;
};

struct DecayFit {
  double rate = 0.0;       // -slope of ln(distance) vs t, clipped at 0
  double intercept = 0.0;  // ln-amplitude at t = 0
  double r_squared = 0.0;  // 0 when the window carries no variation
  double t_start = 0.0;
  double t_end = 0.0;
  std::size_t used = 0;
};

inline constexpr double kDistanceFloor = 1e-15;
inline constexpr double kDefaultWindow = 0.5;
inline constexpr double kDefaultVerdictTol = 2e-2;

// Least squares on ln(distance) over the trailing window_fraction of the
// samples; distances at or below kDistanceFloor are skipped. Throws
// InvalidArgument, TooFewSamples, AllBelowFloor.
DecayFit fit_decay_rate(std::span<const TimedValue> samples,
                        double window_fraction = kDefaultWindow);

// Per-sample distance of one field, or the largest of
// the four when field is omitted. Throws MissingSamples without a target.
std::vector<TimedValue> distance_series(const Trajectory& traj);
std::vector<TimedValue> distance_series(const Trajectory& traj, FieldName field);

struct Verdict {
  std::array<double, 4> distance{};
  double tol = 0.0;
  bool pass = false;
};

// pass iff every final L-inf distance is below tol. Throws AbortedTrajectory.
Verdict convergence_verdict(const Trajectory& traj, const EquilibriumPoint& target,
                            double tol = kDefaultVerdictTol);

}  // namespace cats
