#pragma once

// Kinetics, spatially constant steady states and the algebraic parameter
// conditions of the predator-prey chemo-alarm-taxis system
//
//   u_t = d1 Lap u - chi1 div(u grad(vw)) + mu1 u (1 - u + a1 v + a2 w)
//   v_t = d2 Lap v - chi2 div(v grad z)   + mu2 v (1 - v - a3 u + a4 w)
//   w_t = d3 Lap w + xi   div(w grad z)   + mu3 w (1 - w - a5 u - a6 v)
//   z_t = d4 Lap z + alpha v + beta w - gamma z
//
// with u the secondary predator, v the primary predator, w the prey and z the
// shared chemical, all under zero-flux boundary conditions.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cats {

struct Params {
  double d1 = 1, d2 = 1, d3 = 1, d4 = 1;
  double chi1 = 1, chi2 = 1, xi = 1;
  double mu1 = 1, mu2 = 1, mu3 = 1;
  double a1 = 0.5, a2 = 0.5, a3 = 0.5, a4 = 0.5, a5 = 0.5, a6 = 0.5;
  double alpha = 1, beta = 1, gamma = 2;

  bool operator==(const Params&) const = default;
};

// Every coefficient must be finite and strictly positive; throws BadValue
// naming the first offending coefficient.
void validate(const Params& p);

struct Rates {
  double du = 0, dv = 0, dw = 0, dz = 0;
};

inline Rates reaction_terms(double u, double v, double w, double z,
                            const Params& p) noexcept {
  return {p.mu1 * u * (1.0 - u + p.a1 * v + p.a2 * w),
          p.mu2 * v * (1.0 - v - p.a3 * u + p.a4 * w),
          p.mu3 * w * (1.0 - w - p.a5 * u - p.a6 * v),
          p.alpha * v + p.beta * w - p.gamma * z};
}

enum class EquilibriumKind {
  Extinction,          // (0, 0, 0, 0)
  SecondaryOnly,       // (1, 0, 0, 0)
  PrimaryOnly,         // (0, 1, 0, alpha/gamma)
  PreyOnly,            // (0, 0, 1, beta/gamma)
  SecondaryVanishing,  // u = 0
  PrimaryVanishing,    // v = 0
  PreyVanishing,       // w = 0
  Coexistence,
};

std::string_view to_string(EquilibriumKind kind) noexcept;
std::optional<EquilibriumKind> parse_equilibrium_kind(std::string_view name);

struct EquilibriumPoint {
  EquilibriumKind kind = EquilibriumKind::Extinction;
  double u = 0, v = 0, w = 0, z = 0;
  bool admissible = true;

  std::array<double, 4> components() const { return {u, v, w, z}; }
};

// Closed-form interior steady state. Throws DegenerateDenominator when the
// shared denominator is below 1e-14 in magnitude.
EquilibriumPoint coexistence_equilibrium(const Params& p);

// All eight steady states in fixed order: the four trivial ones, then
// SecondaryVanishing, PrimaryVanishing, PreyVanishing, Coexistence.
std::array<EquilibriumPoint, 8> enumerate_equilibria(const Params& p);

EquilibriumPoint equilibrium(const Params& p, EquilibriumKind kind);

// Largest absolute kinetic rate at a point.
double reaction_residual(const EquilibriumPoint& e, const Params& p) noexcept;

// Lyapunov weights mu1 a1 / (mu2 a3) and mu1 a2 / (mu3 a5).
inline double gamma1(const Params& p) noexcept {
  return p.mu1 * p.a1 / (p.mu2 * p.a3);
}
inline double gamma2(const Params& p) noexcept {
  return p.mu1 * p.a2 / (p.mu3 * p.a5);
}

enum class ConditionTarget { Cond01, Thm12, Thm13, Thm14_1, Thm14_2 };

std::string_view to_string(ConditionTarget target) noexcept;

enum class Relation { Less, Greater };

struct Clause {
  std::string label;  // "(i)", "(iii)a", ...
  std::string text;   // the inequality in plain ASCII
  double lhs = 0;
  double rhs = 0;
  Relation relation = Relation::Less;
  // Arguments of a min{...} on the right-hand side, when present.
  std::vector<double> rhs_terms;
  bool satisfied = false;

  // Positive when satisfied, by how much.
  double margin() const noexcept {
    return relation == Relation::Less ? rhs - lhs : lhs - rhs;
  }
};

struct ConditionReport {
  ConditionTarget target = ConditionTarget::Cond01;
  double gamma1 = 0;
  double gamma2 = 0;
  std::vector<Clause> clauses;
  bool all_satisfied = false;
};

// The three strict inequalities under which the coexistence state exists.
ConditionReport check_coexistence_conditions(const Params& p);

// Parameter relations of the convergence results. sup_v and sup_w stand in
// for the uniform bounds of v and w. Throws InadmissibleEquilibrium when the
// equilibrium the clauses refer to has a negative component.
ConditionReport check_theorem_conditions(const Params& p, ConditionTarget target,
                                         double sup_v, double sup_w);

}  // namespace cats
