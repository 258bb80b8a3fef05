#include "cats/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cats/error.hpp"

namespace cats {

DecayFit fit_decay_rate(std::span<const TimedValue> samples,
                        double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "window_fraction must lie in (0, 1]");
  }
  const auto window = static_cast<std::size_t>(
      std::ceil(window_fraction * static_cast<double>(samples.size())));
  const auto tail = samples.subspan(samples.size() - std::min(window, samples.size()));

  std::vector<TimedValue> usable;
  for (const auto& s : tail) {
    if (s.value > kDistanceFloor && std::isfinite(s.value)) {
      usable.push_back({s.t, std::log(s.value)});
    }
  }
  if (usable.empty() && !tail.empty()) {
    throw Error(ErrorCode::AllBelowFloor,
                "every distance in the window is below the floor; rate unresolved");
  }
  if (usable.size() < 3) {
    std::ostringstream os;
    os << "need at least 3 usable samples, have " << usable.size();
    throw Error(ErrorCode::TooFewSamples, os.str());
  }

  const double n = static_cast<double>(usable.size());
  double mean_t = 0.0, mean_y = 0.0;
  for (const auto& s : usable) {
    mean_t += s.t;
    mean_y += s.value;
  }
  mean_t /= n;
  mean_y /= n;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (const auto& s : usable) {
    const double dt = s.t - mean_t, dy = s.value - mean_y;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  if (!(stt > 0.0)) {
    throw Error(ErrorCode::TooFewSamples, "window samples share one time");
  }
  const double slope = sty / stt;

  DecayFit fit;
  fit.rate = std::max(0.0, -slope);
  fit.intercept = mean_y - slope * mean_t;
  fit.r_squared = syy > 0.0 ? std::clamp(sty * sty / (stt * syy), 0.0, 1.0) : 0.0;
  fit.t_start = usable.front().t;
  fit.t_end = usable.back().t;
  fit.used = usable.size();
  return fit;
}

namespace {

void require_distances(const Trajectory& traj) {
  if (traj.samples.empty() || !traj.samples.front().distance) {
    throw Error(ErrorCode::MissingSamples,
                "trajectory was recorded without a target");
  }
}

}  // namespace

std::vector<TimedValue> distance_series(const Trajectory& traj) {
  require_distances(traj);
  std::vector<TimedValue> out;
  out.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    const auto& d = *s.distance;
    out.push_back({s.t, *std::max_element(d.begin(), d.end())});
  }
  return out;
}

std::vector<TimedValue> distance_series(const Trajectory& traj, FieldName field) {
  require_distances(traj);
  std::vector<TimedValue> out;
  out.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    out.push_back({s.t, (*s.distance)[static_cast<int>(field)]});
  }
  return out;
}

Verdict convergence_verdict(const Trajectory& traj, const EquilibriumPoint& target,
                            double tol) {
  if (traj.status == RunStatus::Aborted) {
    throw Error(ErrorCode::AbortedTrajectory,
                traj.abort ? traj.abort->message : "trajectory aborted");
  }
  const State& s = traj.final_state;
  Verdict v;
  v.tol = tol;
  v.distance = {linf_distance(s.u, target.u), linf_distance(s.v, target.v),
                linf_distance(s.w, target.w), linf_distance(s.z, target.z)};
  v.pass = std::all_of(v.distance.begin(), v.distance.end(),
                       [tol](double d) { return d < tol; });
  return v;
}

}  // namespace cats
