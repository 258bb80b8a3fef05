#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cats/error.hpp"
#include "cats/grid.hpp"
#include "cats/model.hpp"

namespace cats {

struct State {
  double t = 0.0;
  Field u, v, w, z;

  const Grid& grid() const noexcept { return u.grid(); }
};

enum class FieldName { u, v, w, z };

const Field& field(const State& s, FieldName name) noexcept;
char to_char(FieldName name) noexcept;

// Bell-shaped data: u = exp(-0.1 r^2), v = 3 exp(-0.3 r^2),
// w = 2 exp(-0.2 r^2), z = exp(-0.1 r^2) with r the distance to the origin.
State initial_state(const Grid& grid);

State uniform_state(const Grid& grid, double u, double v, double w, double z);

struct GridSpec {
  int ndim = 2;
  std::size_t nodes = 102;
  double lo = -0.5;
  double hi = 0.5;

  Grid build() const { return build_grid(ndim, nodes, lo, hi); }

  bool operator==(const GridSpec&) const = default;
};

enum class EnergyTag {
  E1_Coexistence,
  E2_SecondaryOnly,
  E3_PreyVanishing,
  E4_PrimaryVanishing,
};

struct SimConfig {
  Params params;
  GridSpec grid;
  double t_end = 30.0;
  double dt = 0.0;  // 0 selects the stability-limited step
  double record_every = 0.1;
  std::optional<EquilibriumKind> target;
  std::optional<double> stop_tol;
  // When set, every sample carries the matching Lyapunov functional.
  std::optional<EnergyTag> energy;

  bool operator==(const SimConfig&) const = default;
};

// Throws BadValue naming the offending setting.
void validate(const SimConfig& cfg);

struct Sample {
  double t = 0.0;
  std::optional<std::array<double, 4>> distance;  // L-inf per field to target
  std::optional<double> energy;
  std::array<double, 3> mass{};  // integrals of u, v, w
  double sup_v = 0.0;            // running maxima of |v|, |w|
  double sup_w = 0.0;
};

enum class RunStatus { ReachedTEnd, ConvergedEarly, Aborted };

std::string_view to_string(RunStatus status) noexcept;

struct AbortInfo {
  ErrorCode code = ErrorCode::NonFiniteState;
  double t = 0.0;
  std::string message;
};

struct Trajectory {
  std::vector<Sample> samples;
  State final_state;
  std::optional<EquilibriumPoint> target;
  std::optional<EnergyTag> energy;
  std::uint64_t clamp_count = 0;
  std::uint64_t node_updates = 0;  // nodes x fields x steps
  std::uint64_t steps = 0;
  double dt_first = 0.0;
  double dt_min = 0.0;
  double dt_max = 0.0;
  RunStatus status = RunStatus::ReachedTEnd;
  std::optional<AbortInfo> abort;
};

inline constexpr double kDtSafety = 0.4;
inline constexpr double kDtCap = 1e-2;
inline constexpr double kClampFloor = -1e-6;
inline constexpr std::size_t kDtRefreshSteps = 100;

double stable_dt(const State& state, const Params& p);

// Forward Euler update of all four equations. Negative values above
// kClampFloor are set to zero and counted in clamp_count. Throws
// NegativeBlowup or NonFiniteState.
State step(const State& state, const Params& p, double dt,
           std::uint64_t& clamp_count);

// Reusable double-buffered integrator; avoids per-step allocation.
class Stepper {
 public:
  Stepper(const Params& p, const Grid& grid);

  // Advances state in place.
  void advance(State& state, double dt);

  std::uint64_t clamp_count() const noexcept { return clamps_; }

 private:
  Params p_;
  Grid grid_;
  std::vector<double> vw_;
  std::array<std::vector<double>, 4> rate_;
  std::uint64_t clamps_ = 0;
};

// Runs from the bell-shaped data. A numerical failure does not throw: the
// trajectory comes back with status Aborted and the failing time in abort.
Trajectory simulate(const SimConfig& cfg);
Trajectory simulate(const SimConfig& cfg, State initial);

}  // namespace cats
