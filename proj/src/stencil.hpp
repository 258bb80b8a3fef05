#pragma once

#include <cstddef>
#include <cstdint>

#include "cats/grid.hpp"

namespace cats::detail {

// Visits every node once per axis with the flat offsets of its two axis
// neighbours. On a boundary node the missing neighbour is replaced by its
// mirror image, i.e. the interior neighbour.
//   fn(index, offset_minus, offset_plus)
template <class Fn>
void sweep_axis(const Grid& grid, int axis, Fn&& fn) {
  const std::size_t n = grid.dims[axis];
  const std::size_t s = grid.stride(axis);
  const std::size_t outer = grid.node_count() / (n * s);
  const auto step = static_cast<std::ptrdiff_t>(s);
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * n * s;
    for (std::size_t i = 0; i < n; ++i) {
      const std::ptrdiff_t om = i == 0 ? step : -step;
      const std::ptrdiff_t op = i + 1 == n ? -step : step;
      const std::size_t row = base + i * s;
      for (std::size_t j = 0; j < s; ++j) fn(row + j, om, op);
    }
  }
}

}  // namespace cats::detail
