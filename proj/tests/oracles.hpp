#pragma once

// Reference computations written independently of the library: the kinetics
// typed out from the model equations, a scalar Euler integrator for
// spatially constant data, and the example parameter sets.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "cats/model.hpp"

namespace oracle {

using Vec4 = std::array<double, 4>;

inline Vec4 kinetics(const Vec4& x, const cats::Params& p) {
  const double u = x[0], v = x[1], w = x[2], z = x[3];
  Vec4 r;
  r[0] = p.mu1 * u * (1.0 - u + p.a1 * v + p.a2 * w);
  r[1] = p.mu2 * v * (1.0 - v - p.a3 * u + p.a4 * w);
  r[2] = p.mu3 * w * (1.0 - w - p.a5 * u - p.a6 * v);
  r[3] = p.alpha * v + p.beta * w - p.gamma * z;
  return r;
}

inline Vec4 euler_step(const Vec4& x, const cats::Params& p, double dt) {
  const Vec4 r = kinetics(x, p);
  Vec4 y;
  for (int i = 0; i < 4; ++i) y[i] = x[i] + dt * r[i];
  return y;
}

// Step-size rule for constant data on a grid with spacing h in ndim
// dimensions: 0.4 times the smaller of the diffusive and taxis limits,
// capped at 1e-2.
inline double uniform_dt(const Vec4& x, const cats::Params& p, double h, int ndim) {
  const double n2 = 2.0 * ndim;
  const double dmax = std::max({p.d1, p.d2, p.d3, p.d4});
  const double taxis = std::max({p.chi1 * std::abs(x[1] * x[2]), p.chi2 * std::abs(x[3]),
                                 p.xi * std::abs(x[3])});
  double lim = h * h / (n2 * dmax);
  if (taxis > 0) lim = std::min(lim, h * h / (n2 * taxis));
  return std::min(0.4 * lim, 1e-2);
}

struct TimedState {
  double t;
  Vec4 x;
};

// Euler run from x0 that refreshes the step every 100 steps and shortens
// the step that would pass a multiple of every or t_end. Returns the state
// at t = 0 and at each of those times.
inline std::vector<TimedState> run(Vec4 x, const cats::Params& p, double h, int ndim,
                                   double t_end, double every) {
  const double eps = 1e-12 * t_end;
  std::vector<TimedState> out{{0.0, x}};
  double t = 0.0;
  double dt = uniform_dt(x, p, h, ndim);
  int since = 0;
  int k = 1;
  while (t_end - t > eps) {
    if (since == 100) {
      dt = uniform_dt(x, p, h, ndim);
      since = 0;
    }
    const double stop = std::min(t_end, k * every);
    if (stop - t - dt <= eps) {
      x = euler_step(x, p, stop - t);
      t = stop;
      out.push_back({t, x});
      while (k * every <= t + eps) ++k;
    } else {
      x = euler_step(x, p, dt);
      t += dt;
    }
    ++since;
  }
  return out;
}

inline cats::Params with_a(double a1, double a2, double a3, double a4, double a5,
                           double a6) {
  cats::Params p;
  p.a1 = a1;
  p.a2 = a2;
  p.a3 = a3;
  p.a4 = a4;
  p.a5 = a5;
  p.a6 = a6;
  return p;
}

inline cats::Params example(int n) {
  switch (n) {
    case 2: return with_a(0.01, 1, 1.5, 0.01, 2, 2);
    case 3: return with_a(0.01, 1, 0.01, 3, 2, 2);
    case 4: return with_a(0.01, 2, 1.5, 0.01, 0.5, 2);
    default: return with_a(0.5, 0.5, 0.5, 0.5, 0.5, 0.5);
  }
}

// Interior steady state solved from the three linear nullcline equations by
// Cramer's rule, independent of the closed-form expressions.
inline Vec4 coexistence_by_cramer(const cats::Params& p) {
  // u - a1 v - a2 w = 1;  a3 u + v - a4 w = 1;  a5 u + a6 v + w = 1
  const double m[3][3] = {{1, -p.a1, -p.a2}, {p.a3, 1, -p.a4}, {p.a5, p.a6, 1}};
  const auto det3 = [](const double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double d = det3(m);
  Vec4 x{};
  for (int c = 0; c < 3; ++c) {
    double mc[3][3];
    for (int r = 0; r < 3; ++r)
      for (int j = 0; j < 3; ++j) mc[r][j] = j == c ? 1.0 : m[r][j];
    x[c] = det3(mc) / d;
  }
  x[3] = (p.alpha * x[1] + p.beta * x[2]) / p.gamma;
  return x;
}

}  // namespace oracle
