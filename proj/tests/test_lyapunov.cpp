#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cats/error.hpp"
#include "cats/lyapunov.hpp"
#include "oracles.hpp"

using namespace cats;

namespace {

constexpr EnergyTag kTags[] = {EnergyTag::E1_Coexistence, EnergyTag::E2_SecondaryOnly,
                               EnergyTag::E3_PreyVanishing, EnergyTag::E4_PrimaryVanishing};

// Parameter set whose steady state for the tag has positive log components.
Params params_for(EnergyTag tag) {
  switch (tag) {
    case EnergyTag::E1_Coexistence: return oracle::example(1);
    case EnergyTag::E2_SecondaryOnly: return oracle::example(2);
    case EnergyTag::E3_PreyVanishing: return oracle::example(3);
    case EnergyTag::E4_PrimaryVanishing: return oracle::example(4);
  }
  return {};
}

State uniform_at(const Grid& g, const EquilibriumPoint& e) {
  return uniform_state(g, e.u, e.v, e.w, e.z);
}

}  // namespace

TEST_CASE("energy vanishes at each functional's own steady state") {
  const Grid g = build_grid(2, 7, -0.5, 0.5);
  for (auto tag : kTags) {
    CAPTURE(to_string(tag));
    const Params p = params_for(tag);
    const EnergyKind kind = make_energy_kind(tag, p);
    CHECK(kind.equilibrium.kind == expected_kind(tag));
    const State s = uniform_at(g, kind.equilibrium);
    CHECK(std::abs(eval_energy(s, kind, p)) <= 1e-12);
    CHECK(eval_f(s, kind) == 0.0);
  }
}

TEST_CASE("energy is nonnegative on random nonnegative states") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> d(0.0, 3.0);
  const Grid g = build_grid(1, 5, -0.5, 0.5);
  for (auto tag : kTags) {
    const Params p = params_for(tag);
    const EnergyKind kind = make_energy_kind(tag, p);
    for (int i = 0; i < 250; ++i) {
      State s = uniform_state(g, 0, 0, 0, 0);
      for (Field* f : {&s.u, &s.v, &s.w, &s.z})
        for (auto& x : f->values()) x = d(rng);
      CHECK(eval_energy(s, kind, p) >= -1e-12);
    }
  }
}

TEST_CASE("energy is zero only at the steady state") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> d(0.0, 2.0);
  std::uniform_real_distribution<double> tiny(-1e-9, 1e-9);
  const Grid g = build_grid(1, 3, 0.0, 1.0);
  for (auto tag : kTags) {
    const Params p = params_for(tag);
    const EnergyKind kind = make_energy_kind(tag, p);
    const auto& e = kind.equilibrium;
    for (int i = 0; i < 200; ++i) {
      const State s = uniform_state(g, d(rng), d(rng), d(rng), d(rng));
      const double dist = std::max({std::abs(s.u[0] - e.u), std::abs(s.v[0] - e.v),
                                    std::abs(s.w[0] - e.w), std::abs(s.z[0] - e.z)});
      const bool zero = std::abs(eval_energy(s, kind, p)) <= 1e-12;
      CHECK(zero == (dist <= 1e-8));
    }
    // Perturbing the nonzero levels by far less than 1e-8 keeps the value
    // below 1e-12; a vanishing level enters linearly and stays exactly zero.
    const auto nudge = [&](double level) { return level > 0 ? level + tiny(rng) : 0.0; };
    const State near =
        uniform_state(g, nudge(e.u), nudge(e.v), nudge(e.w), e.z + tiny(rng));
    CHECK(std::abs(eval_energy(near, kind, p)) <= 1e-12);
  }
}

TEST_CASE("E2 at (e, 0, 0, 0) equals (e - 2) times the domain size") {
  const Params p = oracle::example(2);
  const EnergyKind kind = make_energy_kind(EnergyTag::E2_SecondaryOnly, p);
  for (int nd = 1; nd <= 3; ++nd) {
    const Grid g = build_grid(nd, 3, 0.0, 2.0);
    const double e = std::exp(1.0);
    CHECK(eval_energy(uniform_state(g, e, 0, 0, 0), kind, p) ==
          doctest::Approx((e - 2.0) * g.volume()).epsilon(1e-14));
  }
  CHECK(std::exp(1.0) - 2.0 == doctest::Approx(0.718282).epsilon(1e-6));
}

TEST_CASE("vanishing components enter linearly plus quadratically") {
  // E3 at (u_bar, v_bar, w, z_bar) is G2 w + w^2/2.
  const Params p = oracle::example(3);
  const EnergyKind kind = make_energy_kind(EnergyTag::E3_PreyVanishing, p);
  const auto& e = kind.equilibrium;
  const Grid g = build_grid(1, 3, 0.0, 1.0);
  const double w = 0.3;
  CHECK(eval_energy(uniform_state(g, e.u, e.v, w, e.z), kind, p) ==
        doctest::Approx(gamma2(p) * w + 0.5 * w * w).epsilon(1e-14));
}

TEST_CASE("E4 uses the w logarithm about the prey level") {
  const Params p = oracle::example(4);
  const EnergyKind kind = make_energy_kind(EnergyTag::E4_PrimaryVanishing, p);
  const auto& e = kind.equilibrium;
  const Grid g = build_grid(1, 3, 0.0, 1.0);
  const double w = 0.6;
  const double want = gamma2(p) * (w - e.w - e.w * std::log(w / e.w));
  CHECK(eval_energy(uniform_state(g, e.u, 0, w, e.z), kind, p) ==
        doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("second-order Taylor agreement near the coexistence state") {
  const Params p = oracle::example(1);
  const EnergyKind kind = make_energy_kind(EnergyTag::E1_Coexistence, p);
  const auto& e = kind.equilibrium;
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> d(-1e-3, 1e-3);
  const Grid g = build_grid(2, 6, -0.5, 0.5);
  for (int i = 0; i < 50; ++i) {
    State s = uniform_at(g, e);
    for (std::size_t k = 0; k < s.u.size(); ++k) {
      s.u[k] += d(rng);
      s.v[k] += d(rng);
      s.w[k] += d(rng);
      s.z[k] += d(rng);
    }
    double quad = 0.0;
    for (std::size_t k = 0; k < s.u.size(); ++k) {
      const double du = s.u[k] - e.u, dv = s.v[k] - e.v;
      const double dw = s.w[k] - e.w, dz = s.z[k] - e.z;
      quad += node_weight(g, k) * (0.5 * du * du / e.u + gamma1(p) * 0.5 * dv * dv / e.v +
                                   gamma2(p) * 0.5 * dw * dw / e.w + 0.5 * dz * dz);
    }
    CHECK(eval_energy(s, kind, p) == doctest::Approx(quad).epsilon(0.05));
  }
}

TEST_CASE("f is quadratic in the deviation and offset in u only gives delta squared") {
  const Params p = oracle::example(1);
  const EnergyKind kind = make_energy_kind(EnergyTag::E1_Coexistence, p);
  const auto& e = kind.equilibrium;
  const Grid g = build_grid(2, 5, -0.5, 0.5);
  const double delta = 0.03;
  CHECK(eval_f(uniform_state(g, e.u + delta, e.v, e.w, e.z), kind) ==
        doctest::Approx(delta * delta * g.volume()).epsilon(1e-12));
  // Binary-exact levels and deviations: doubling the deviation gives
  // exactly four times the value.
  const Params p4 = oracle::example(4);
  const EnergyKind k4 = make_energy_kind(EnergyTag::E4_PrimaryVanishing, p4);
  const State s1 = uniform_state(g, 1.75, 0.5, 0.5, 0.25);
  const State s2 = uniform_state(g, 2.0, 1.0, 0.75, 0.375);
  CHECK(eval_f(s2, k4) == 4.0 * eval_f(s1, k4));
}

TEST_CASE("f ignores node relabelling") {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> d(0.0, 2.0);
  const Params p = oracle::example(1);
  const EnergyKind kind = make_energy_kind(EnergyTag::E1_Coexistence, p);
  const Grid g = build_grid(1, 9, 0.0, 1.0);
  State s = uniform_state(g, 0, 0, 0, 0);
  for (Field* f : {&s.u, &s.v, &s.w, &s.z})
    for (auto& x : f->values()) x = d(rng);
  // Reversal maps boundary nodes to boundary nodes, so weights match.
  State r = s;
  for (Field* f : {&r.u, &r.v, &r.w, &r.z}) {
    auto v = f->values();
    std::reverse(v.begin(), v.end());
  }
  CHECK(eval_f(r, kind) == doctest::Approx(eval_f(s, kind)).epsilon(1e-14));
}

TEST_CASE("errors: kind mismatch, negative field, inadmissible steady state") {
  const Params p = oracle::example(1);
  const Grid g = build_grid(1, 3, 0, 1);
  EnergyKind bad = make_energy_kind(EnergyTag::E1_Coexistence, p);
  bad.tag = EnergyTag::E2_SecondaryOnly;
  const auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoFailure;
  };
  CHECK(code([&] { eval_energy(uniform_state(g, 1, 1, 1, 1), bad, p); }) ==
        ErrorCode::KindMismatch);
  CHECK(code([&] { eval_f(uniform_state(g, 1, 1, 1, 1), bad); }) == ErrorCode::KindMismatch);
  const EnergyKind good = make_energy_kind(EnergyTag::E1_Coexistence, p);
  CHECK(code([&] { eval_energy(uniform_state(g, 1, -0.1, 1, 1), good, p); }) ==
        ErrorCode::NegativeField);
  CHECK(code([&] { make_energy_kind(EnergyTag::E1_Coexistence, oracle::example(2)); }) ==
        ErrorCode::InadmissibleEquilibrium);
}

TEST_CASE("log guard counts clamped nodes") {
  const Params p = oracle::example(1);
  const EnergyKind kind = make_energy_kind(EnergyTag::E1_Coexistence, p);
  const Grid g = build_grid(1, 3, 0, 1);
  State s = uniform_at(g, kind.equilibrium);
  s.u[1] = 0.0;
  const auto v = eval_energy_counted(s, kind, p);
  CHECK(v.log_clamps == 1);
  CHECK(std::isfinite(v.value));
  CHECK(v.value > 0.0);
}

TEST_CASE("decay monitor on synthetic series") {
  const std::vector<double> down{5, 4, 3, 2, 1};
  auto r = decay_monitor(down);
  CHECK(r.max_violation == 0.0);
  CHECK(r.nonincreasing_fraction == 1.0);
  CHECK(r.transitions == 4);

  const std::vector<double> flat(6, 2.0);
  r = decay_monitor(flat);
  CHECK(r.max_violation == 0.0);
  CHECK(r.nonincreasing_fraction == 1.0);

  const std::vector<double> bump{1.0, 3.0, 2.0, 2.5, 1.0};
  r = decay_monitor(bump);
  CHECK(r.max_violation == 2.0);
  CHECK(r.nonincreasing_fraction == 0.5);
  r = decay_monitor(bump, 1);
  CHECK(r.transitions == 3);
  CHECK(r.max_violation == 0.5);
}

TEST_CASE("decay monitor on trajectories") {
  SimConfig cfg;
  cfg.params = oracle::example(1);
  cfg.grid = {1, 9, -0.5, 0.5};
  cfg.t_end = 1.0;
  Trajectory plain = simulate(cfg);
  try {
    decay_monitor(plain, EnergyTag::E1_Coexistence);
    FAIL("expected MissingSamples");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingSamples);
  }
  cfg.energy = EnergyTag::E1_Coexistence;
  const Trajectory withE = simulate(cfg);
  try {
    decay_monitor(withE, EnergyTag::E3_PreyVanishing);
    FAIL("expected KindMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::KindMismatch);
  }
  const auto r = decay_monitor(withE, EnergyTag::E1_Coexistence);
  CHECK(r.transitions == withE.samples.size() - 1);
}

TEST_CASE("tag names round-trip") {
  for (auto tag : kTags) CHECK(parse_energy_tag(to_string(tag)) == tag);
  CHECK(to_string(EnergyTag::E1_Coexistence) == "e1");
  CHECK_FALSE(parse_energy_tag("e5").has_value());
}
