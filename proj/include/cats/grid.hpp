#pragma once

// Node-centred uniform grids on axis-aligned boxes and the discrete operators
// used by the solver. Every operator closes the boundary with a mirror ghost
// node, which is the same as zero flux through the boundary with half-width
// control volumes on boundary nodes; together with trapezoidal weights this
// makes the discrete divergence sum to zero exactly (up to roundoff).

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace cats {

struct Grid {
  int ndim = 1;
  std::array<std::size_t, 3> dims{1, 1, 1};
  double h = 1.0;
  std::array<double, 3> origin{0.0, 0.0, 0.0};

  std::size_t node_count() const noexcept {
    std::size_t n = 1;
    for (int a = 0; a < ndim; ++a) n *= dims[a];
    return n;
  }

  // Distance between consecutive flat indices along an axis.
  std::size_t stride(int axis) const noexcept {
    std::size_t s = 1;
    for (int a = ndim - 1; a > axis; --a) s *= dims[a];
    return s;
  }

  double coordinate(int axis, std::size_t i) const noexcept {
    return origin[axis] + static_cast<double>(i) * h;
  }

  double extent(int axis) const noexcept {
    return static_cast<double>(dims[axis] - 1) * h;
  }

  double volume() const noexcept {
    double v = 1.0;
    for (int a = 0; a < ndim; ++a) v *= extent(a);
    return v;
  }

  bool operator==(const Grid&) const = default;
};

// Endpoint-inclusive grid with nodes_per_axis nodes on [lo, hi] per axis.
// Throws BadExtent when hi <= lo, TooFewNodes when nodes_per_axis < 3.
Grid build_grid(int ndim, std::size_t nodes_per_axis, double lo, double hi);

// One scalar per node, row-major with the last axis fastest.
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& grid, double fill = 0.0);
  Field(const Grid& grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  double& operator[](std::size_t i) noexcept { return values_[i]; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  bool all_finite() const noexcept;

  // Exchanges the node values with an equally sized buffer.
  void swap_values(std::vector<double>& other);

  bool operator==(const Field&) const = default;

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Trapezoidal quadrature weight of a node (h^ndim halved once per boundary
// axis the node sits on).
double node_weight(const Grid& grid, std::size_t flat_index) noexcept;

Field laplacian(const Field& f);

enum class TaxisSign { attract = -1, repel = +1 };

// sign * div(coeff * carrier * grad potential), in flux form with the face
// carrier value taken as the arithmetic mean of its two nodes.
// Throws GridMismatch.
Field taxis_divergence(const Field& carrier, const Field& potential,
                       TaxisSign sign, double coeff);

// Throws GridMismatch.
Field product_field(const Field& a, const Field& b);

double integrate(const Field& f);
double linf_norm(const Field& f) noexcept;
double linf_distance(const Field& f, double level) noexcept;

}  // namespace cats
