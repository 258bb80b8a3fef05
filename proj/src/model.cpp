#include "cats/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cats/error.hpp"

namespace cats {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BadExtent: return "BadExtent";
    case ErrorCode::TooFewNodes: return "TooFewNodes";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::InadmissibleEquilibrium: return "InadmissibleEquilibrium";
    case ErrorCode::NegativeBlowup: return "NegativeBlowup";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::NegativeField: return "NegativeField";
    case ErrorCode::MissingSamples: return "MissingSamples";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::AllBelowFloor: return "AllBelowFloor";
    case ErrorCode::AbortedTrajectory: return "AbortedTrajectory";
    case ErrorCode::MissingKey: return "MissingKey";
    case ErrorCode::BadValue: return "BadValue";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

void validate(const Params& p) {
  const std::pair<const char*, double> fields[] = {
      {"d1", p.d1},       {"d2", p.d2},     {"d3", p.d3},     {"d4", p.d4},
      {"chi1", p.chi1},   {"chi2", p.chi2}, {"xi", p.xi},     {"mu1", p.mu1},
      {"mu2", p.mu2},     {"mu3", p.mu3},   {"a1", p.a1},     {"a2", p.a2},
      {"a3", p.a3},       {"a4", p.a4},     {"a5", p.a5},     {"a6", p.a6},
      {"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}};
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value) || !(value > 0.0)) {
      std::ostringstream os;
      os << "parameter '" << name << "' must be finite and positive, got "
         << value;
      throw Error(ErrorCode::BadValue, os.str());
    }
  }
}

std::string_view to_string(EquilibriumKind kind) noexcept {
  switch (kind) {
    case EquilibriumKind::Extinction: return "extinction";
    case EquilibriumKind::SecondaryOnly: return "trivial";
    case EquilibriumKind::PrimaryOnly: return "primary-only";
    case EquilibriumKind::PreyOnly: return "prey-only";
    case EquilibriumKind::SecondaryVanishing: return "secondary-vanishing";
    case EquilibriumKind::PrimaryVanishing: return "primary-vanishing";
    case EquilibriumKind::PreyVanishing: return "prey-vanishing";
    case EquilibriumKind::Coexistence: return "coexistence";
  }
  return "unknown";
}

std::optional<EquilibriumKind> parse_equilibrium_kind(std::string_view name) {
  for (int k = 0; k < 8; ++k) {
    const auto kind = static_cast<EquilibriumKind>(k);
    if (to_string(kind) == name) return kind;
  }
  if (name == "secondary-only") return EquilibriumKind::SecondaryOnly;
  return std::nullopt;
}

std::string_view to_string(ConditionTarget target) noexcept {
  switch (target) {
    case ConditionTarget::Cond01: return "Cond01";
    case ConditionTarget::Thm12: return "Thm12";
    case ConditionTarget::Thm13: return "Thm13";
    case ConditionTarget::Thm14_1: return "Thm14_1";
    case ConditionTarget::Thm14_2: return "Thm14_2";
  }
  return "unknown";
}

namespace {

constexpr double kDenominatorFloor = 1e-14;

EquilibriumPoint make_point(EquilibriumKind kind, double u, double v, double w,
                            const Params& p) {
  EquilibriumPoint e;
  e.kind = kind;
  e.u = u;
  e.v = v;
  e.w = w;
  e.z = (p.alpha * v + p.beta * w) / p.gamma;
  e.admissible = u >= 0.0 && v >= 0.0 && w >= 0.0 && e.z >= 0.0;
  return e;
}

double checked_denominator(double d, std::string_view what) {
  if (!(std::abs(d) >= kDenominatorFloor)) {
    std::ostringstream os;
    os << what << " denominator vanishes (" << d << ")";
    throw Error(ErrorCode::DegenerateDenominator, os.str());
  }
  return d;
}

Clause make_clause(std::string label, std::string text, double lhs, double rhs,
                   Relation relation = Relation::Less,
                   std::vector<double> rhs_terms = {}) {
  Clause c;
  c.label = std::move(label);
  c.text = std::move(text);
  c.lhs = lhs;
  c.rhs = rhs;
  c.relation = relation;
  c.rhs_terms = std::move(rhs_terms);
  c.satisfied = relation == Relation::Less ? lhs < rhs : lhs > rhs;
  return c;
}

Clause min_clause(std::string label, std::string text, double lhs, double t0,
                  double t1) {
  return make_clause(std::move(label), std::move(text), lhs, std::min(t0, t1),
                     Relation::Less, {t0, t1});
}

void finish(ConditionReport& r) {
  r.all_satisfied = std::all_of(r.clauses.begin(), r.clauses.end(),
                                [](const Clause& c) { return c.satisfied; });
}

EquilibriumPoint require_admissible(const Params& p, EquilibriumKind kind) {
  auto e = equilibrium(p, kind);
  if (!e.admissible) {
    std::ostringstream os;
    os << to_string(kind) << " steady state (" << e.u << ", " << e.v << ", "
       << e.w << ", " << e.z << ") has a negative component";
    throw Error(ErrorCode::InadmissibleEquilibrium, os.str());
  }
  return e;
}

}  // namespace

EquilibriumPoint coexistence_equilibrium(const Params& p) {
  const double a1 = p.a1, a2 = p.a2, a3 = p.a3, a4 = p.a4, a5 = p.a5, a6 = p.a6;
  const double den = checked_denominator(
      1.0 + a1 * (a3 + a4 * a5) + a4 * a6 + a2 * (a5 - a3 * a6), "coexistence");
  const double u = (1.0 + a1 + a2 + a1 * a4 + a6 * (a4 - a2)) / den;
  const double v = (1.0 - a3 * (1.0 + a2) + a4 + a5 * (a2 - a4)) / den;
  const double w = (1.0 + a1 * (a3 - a5) - a5 + a6 * (a3 - 1.0)) / den;
  return make_point(EquilibriumKind::Coexistence, u, v, w, p);
}

EquilibriumPoint equilibrium(const Params& p, EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::Extinction:
      return make_point(kind, 0, 0, 0, p);
    case EquilibriumKind::SecondaryOnly:
      return make_point(kind, 1, 0, 0, p);
    case EquilibriumKind::PrimaryOnly:
      return make_point(kind, 0, 1, 0, p);
    case EquilibriumKind::PreyOnly:
      return make_point(kind, 0, 0, 1, p);
    case EquilibriumKind::SecondaryVanishing: {
      const double den =
          checked_denominator(1.0 + p.a4 * p.a6, "secondary-vanishing");
      return make_point(kind, 0, (1.0 + p.a4) / den, (1.0 - p.a6) / den, p);
    }
    case EquilibriumKind::PrimaryVanishing: {
      const double den =
          checked_denominator(1.0 + p.a2 * p.a5, "primary-vanishing");
      return make_point(kind, (1.0 + p.a2) / den, 0, (1.0 - p.a5) / den, p);
    }
    case EquilibriumKind::PreyVanishing: {
      const double den =
          checked_denominator(1.0 + p.a1 * p.a3, "prey-vanishing");
      return make_point(kind, (1.0 + p.a1) / den, (1.0 - p.a3) / den, 0, p);
    }
    case EquilibriumKind::Coexistence:
      return coexistence_equilibrium(p);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown equilibrium kind");
}

std::array<EquilibriumPoint, 8> enumerate_equilibria(const Params& p) {
  std::array<EquilibriumPoint, 8> out;
  for (int k = 0; k < 8; ++k) {
    out[k] = equilibrium(p, static_cast<EquilibriumKind>(k));
  }
  return out;
}

double reaction_residual(const EquilibriumPoint& e, const Params& p) noexcept {
  const auto r = reaction_terms(e.u, e.v, e.w, e.z, p);
  return std::max({std::abs(r.du), std::abs(r.dv), std::abs(r.dw),
                   std::abs(r.dz)});
}

ConditionReport check_coexistence_conditions(const Params& p) {
  const double a1 = p.a1, a2 = p.a2, a3 = p.a3, a4 = p.a4, a5 = p.a5, a6 = p.a6;
  ConditionReport r;
  r.target = ConditionTarget::Cond01;
  r.gamma1 = gamma1(p);
  r.gamma2 = gamma2(p);
  r.clauses.push_back(min_clause(
      "(1)",
      "a2*a6 < min{1+a1+a2+a1*a4+a4*a6, (1+a1*(a3+a4*a5)+a4*a6+a2*a5)/a3}",
      a2 * a6, 1.0 + a1 + a2 + a1 * a4 + a4 * a6,
      (1.0 + a1 * (a3 + a4 * a5) + a4 * a6 + a2 * a5) / a3));
  r.clauses.push_back(make_clause("(2)", "a3*(1+a2)+a4*a5 < 1+a4+a2*a5",
                                  a3 * (1.0 + a2) + a4 * a5,
                                  1.0 + a4 + a2 * a5));
  r.clauses.push_back(make_clause("(3)", "a5*(1+a1)+a6 < 1+a3*(a1+a6)",
                                  a5 * (1.0 + a1) + a6,
                                  1.0 + a3 * (a1 + a6)));
  finish(r);
  return r;
}

ConditionReport check_theorem_conditions(const Params& p, ConditionTarget target,
                                         double sup_v, double sup_w) {
  if (!(sup_v > 0.0) || !(sup_w > 0.0) || !std::isfinite(sup_v) ||
      !std::isfinite(sup_w)) {
    throw Error(ErrorCode::InvalidArgument,
                "sup_v and sup_w must be finite and positive");
  }
  const double g1 = gamma1(p), g2 = gamma2(p);
  const double sv2 = sup_v * sup_v, sw2 = sup_w * sup_w;
  const double chi1_sq = p.chi1 * p.chi1;
  const double chi2_sq = p.chi2 * p.chi2;
  const double xi_sq = p.xi * p.xi;
  const double ddd = 2.0 * p.d2 * p.d3 * p.d4;
  const double a145 = p.a1 * p.a4 * p.a5;
  const double a236 = p.a2 * p.a3 * p.a6;

  ConditionReport r;
  r.target = target;
  r.gamma1 = g1;
  r.gamma2 = g2;
  auto& c = r.clauses;
  const auto chem = [&] {
    return make_clause("", "alpha+beta < 2*gamma", p.alpha + p.beta,
                       2.0 * p.gamma);
  };
  const auto labelled = [](Clause cl, std::string label) {
    cl.label = std::move(label);
    return cl;
  };

  switch (target) {
    case ConditionTarget::Thm12: {
      const auto e = require_admissible(p, EquilibriumKind::Coexistence);
      c.push_back(min_clause(
          "(i)",
          "chi1^2 < min{d1*d2*v*G1/(u*|v|^2|w|^2), d1*d3*w*G2/(u*|v|^2|w|^2)}",
          chi1_sq, p.d1 * p.d2 * e.v * g1 / (e.u * sv2 * sw2),
          p.d1 * p.d3 * e.w * g2 / (e.u * sv2 * sw2)));
      c.push_back(make_clause("(ii)", "d3*chi2^2*v*G1 + d2*xi^2*w*G2 < 2*d2*d3*d4",
                              p.d3 * chi2_sq * e.v * g1 + p.d2 * xi_sq * e.w * g2,
                              ddd));
      c.push_back(make_clause("(iii)", "mu2*a4*G1 + alpha < 2*mu2*G1 + mu3*a6*G2",
                              p.mu2 * p.a4 * g1 + p.alpha,
                              2.0 * p.mu2 * g1 + p.mu3 * p.a6 * g2));
      c.push_back(make_clause("(iv)", "mu2*a4*G1 + beta < 2*mu3*G2 + mu3*a6*G2",
                              p.mu2 * p.a4 * g1 + p.beta,
                              2.0 * p.mu3 * g2 + p.mu3 * p.a6 * g2));
      c.push_back(labelled(chem(), "(v)"));
      c.push_back(make_clause("(vi)", "a1*a4*a5 > a2*a3*a6", a145, a236,
                              Relation::Greater));
      break;
    }
    case ConditionTarget::Thm13: {
      c.push_back(min_clause("(i)", "chi1^2 < min{d1*d2/|w|^2, d1*d3/|v|^2}",
                             chi1_sq, p.d1 * p.d2 / sw2, p.d1 * p.d3 / sv2));
      c.push_back(make_clause("(ii)",
                              "d3*chi2^2*|v|^2 + d2*xi^2*|w|^2 < 2*d2*d3*d4",
                              p.d3 * chi2_sq * sv2 + p.d2 * xi_sq * sw2, ddd));
      c.push_back(make_clause("(iii)a", "mu2 + mu2*a4*|w| + alpha/2 < G1*mu2",
                              p.mu2 + p.mu2 * p.a4 * sup_w + 0.5 * p.alpha,
                              g1 * p.mu2));
      c.push_back(make_clause("(iii)b", "G1*mu2 < mu1*a1", g1 * p.mu2,
                              p.mu1 * p.a1));
      c.push_back(make_clause("(iv)a", "mu3 + beta/2 < G2*mu3",
                              p.mu3 + 0.5 * p.beta, g2 * p.mu3));
      c.push_back(make_clause("(iv)b", "G2*mu3 < mu1*a2", g2 * p.mu3,
                              p.mu1 * p.a2));
      c.push_back(labelled(chem(), "(v)"));
      c.push_back(make_clause("(vi)", "a1*a4*a5 < a2*a3*a6", a145, a236));
      break;
    }
    case ConditionTarget::Thm14_1: {
      const auto e = require_admissible(p, EquilibriumKind::PreyVanishing);
      c.push_back(min_clause(
          "(i)", "chi1^2 < min{d1*d2*vb*G1/(ub*|v|^2|w|^2), d1*d3/(ub*|v|^2)}",
          chi1_sq, p.d1 * p.d2 * e.v * g1 / (e.u * sv2 * sw2),
          p.d1 * p.d3 / (e.u * sv2)));
      c.push_back(make_clause("(ii)",
                              "d3*chi2^2*vb*G1 + d2*xi^2*|w|^2 < 2*d2*d3*d4",
                              p.d3 * chi2_sq * e.v * g1 + p.d2 * xi_sq * sw2,
                              ddd));
      c.push_back(make_clause("(iii)a", "mu3 + beta/2 < G2*mu3",
                              p.mu3 + 0.5 * p.beta, g2 * p.mu3));
      c.push_back(make_clause("(iii)b", "G2*mu3 < mu1*a2*ub + G1*mu2*a4*vb",
                              g2 * p.mu3,
                              p.mu1 * p.a2 * e.u + g1 * p.mu2 * p.a4 * e.v));
      c.push_back(labelled(chem(), "(iv)"));
      c.push_back(make_clause("(v)", "a1*a4*a5 < a2*a3*a6", a145, a236));
      c.push_back(make_clause("(vi)", "alpha < 2*G1*mu2", p.alpha,
                              2.0 * g1 * p.mu2));
      break;
    }
    case ConditionTarget::Thm14_2: {
      const auto e = require_admissible(p, EquilibriumKind::PrimaryVanishing);
      c.push_back(min_clause(
          "(i)", "chi1^2 < min{d1*d2/(uh*|w|^2), d1*d3*wh*G2/(uh*|v|^2|w|^2)}",
          chi1_sq, p.d1 * p.d2 / (e.u * sw2),
          p.d1 * p.d3 * e.w * g2 / (e.u * sv2 * sw2)));
      c.push_back(make_clause("(ii)",
                              "d3*chi2^2*|v|^2 + d2*xi^2*wh*G2 < 2*d2*d3*d4",
                              p.d3 * chi2_sq * sv2 + p.d2 * xi_sq * e.w * g2,
                              ddd));
      c.push_back(make_clause("(iii)", "mu2 + mu2*a4*|w| + alpha/2 < G1*mu2",
                              p.mu2 + p.mu2 * p.a4 * sup_w + 0.5 * p.alpha,
                              g1 * p.mu2));
      c.push_back(make_clause("(iv)", "G1*mu2 + G2*mu3*a6*wh < mu1*a1*uh",
                              g1 * p.mu2 + g2 * p.mu3 * p.a6 * e.w,
                              p.mu1 * p.a1 * e.u));
      c.push_back(labelled(chem(), "(v)"));
      c.push_back(make_clause("(vi)", "a1*a4*a5 < a2*a3*a6", a145, a236));
      c.push_back(make_clause("(vii)", "beta < G2*mu3", p.beta, g2 * p.mu3));
      break;
    }
    case ConditionTarget::Cond01:
      throw Error(ErrorCode::InvalidArgument,
                  "use check_coexistence_conditions for Cond01");
  }
  finish(r);
  return r;
}

}  // namespace cats
