#include "cats/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cats/error.hpp"
#include "stencil.hpp"

namespace cats {

Grid build_grid(int ndim, std::size_t nodes_per_axis, double lo, double hi) {
  if (ndim < 1 || ndim > 3) {
    throw Error(ErrorCode::InvalidArgument, "ndim must be 1, 2 or 3");
  }
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    std::ostringstream os;
    os << "empty or non-finite extent [" << lo << ", " << hi << "]";
    throw Error(ErrorCode::BadExtent, os.str());
  }
  if (nodes_per_axis < 3) {
    throw Error(ErrorCode::TooFewNodes, "at least 3 nodes per axis required");
  }
  Grid g;
  g.ndim = ndim;
  g.h = (hi - lo) / static_cast<double>(nodes_per_axis - 1);
  for (int a = 0; a < ndim; ++a) {
    g.dims[a] = nodes_per_axis;
    g.origin[a] = lo;
  }
  return g;
}

Field::Field(const Grid& grid, double fill)
    : grid_(grid), values_(grid.node_count(), fill) {}

Field::Field(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.node_count()) {
    throw Error(ErrorCode::InvalidArgument,
                "field length does not match grid node count");
  }
}

bool Field::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](double x) { return std::isfinite(x); });
}

void Field::swap_values(std::vector<double>& other) {
  if (other.size() != values_.size()) {
    throw Error(ErrorCode::InvalidArgument, "buffer size mismatch");
  }
  values_.swap(other);
}

double node_weight(const Grid& grid, std::size_t flat_index) noexcept {
  double w = 1.0;
  for (int a = grid.ndim - 1; a >= 0; --a) {
    const std::size_t n = grid.dims[a];
    const std::size_t i = flat_index % n;
    flat_index /= n;
    w *= (i == 0 || i + 1 == n) ? 0.5 * grid.h : grid.h;
  }
  return w;
}

namespace {

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) {
    throw Error(ErrorCode::GridMismatch, "fields live on different grids");
  }
}

}  // namespace

Field laplacian(const Field& f) {
  const Grid& g = f.grid();
  Field out(g, 0.0);
  const double inv_h2 = 1.0 / (g.h * g.h);
  const auto in = f.values();
  auto res = out.values();
  for (int a = 0; a < g.ndim; ++a) {
    detail::sweep_axis(g, a, [&](std::size_t k, std::ptrdiff_t om,
                                 std::ptrdiff_t op) {
      res[k] += (in[k + om] + in[k + op] - 2.0 * in[k]) * inv_h2;
    });
  }
  return out;
}

Field taxis_divergence(const Field& carrier, const Field& potential,
                       TaxisSign sign, double coeff) {
  require_same_grid(carrier, potential);
  const Grid& g = carrier.grid();
  Field out(g, 0.0);
  const double scale =
      static_cast<double>(static_cast<int>(sign)) * coeff * 0.5 / (g.h * g.h);
  const auto c = carrier.values();
  const auto p = potential.values();
  auto res = out.values();
  for (int a = 0; a < g.ndim; ++a) {
    detail::sweep_axis(g, a, [&](std::size_t k, std::ptrdiff_t om,
                                 std::ptrdiff_t op) {
      const double flux_plus = (c[k] + c[k + op]) * (p[k + op] - p[k]);
      const double flux_minus = (c[k + om] + c[k]) * (p[k] - p[k + om]);
      res[k] += scale * (flux_plus - flux_minus);
    });
  }
  return out;
}

Field product_field(const Field& a, const Field& b) {
  require_same_grid(a, b);
  Field out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

double integrate(const Field& f) {
  const Grid& g = f.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += node_weight(g, i) * f[i];
  return sum;
}

double linf_norm(const Field& f) noexcept {
  double m = 0.0;
  for (double x : f.values()) m = std::max(m, std::abs(x));
  return m;
}

double linf_distance(const Field& f, double level) noexcept {
  double m = 0.0;
  for (double x : f.values()) m = std::max(m, std::abs(x - level));
  return m;
}

}  // namespace cats
