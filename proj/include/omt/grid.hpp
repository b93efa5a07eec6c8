#pragma once

#include <cstddef>

#include "omt/error.hpp"

namespace omt {

// Uniform n x n discretization of the unit square. Cell centers sit at
// (i*dx, j*dx) for i, j in [0, n), so the first and last centers lie on the
// boundary of the domain.
struct GridSpec {
  int n = 0;
  double dx = 0.0;

  GridSpec() = default;
  explicit GridSpec(int cells_per_side) : n(cells_per_side) {
    require(n >= 2, ErrorKind::InvalidArgument, "grid needs n >= 2");
    dx = 1.0 / static_cast<double>(n - 1);
  }

  std::size_t cells() const { return static_cast<std::size_t>(n) * n; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * n + j;
  }
  double coord(int i) const { return i * dx; }

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.n == b.n;
  }
};

}  // namespace omt
