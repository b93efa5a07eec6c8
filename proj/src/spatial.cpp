#include "omt/spatial.hpp"

#include "omt/error.hpp"

namespace omt {

Field div_x(const FluxField& u, const GridSpec& grid) {
  const int n = grid.n;
  require(u.n() == n && u.uy.n() == n && u.uy.components() == u.components(),
          ErrorKind::DimensionMismatch, "div_x: flux does not match grid");
  require(u.ghosts_zero(), ErrorKind::InvalidArgument,
          "div_x: flux has non-zero ghost samples");
  const double inv = 1.0 / grid.dx;
  Field out(n, u.components());
  for (int c = 0; c < u.components(); ++c) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double v = u.ux.at(c, i, j) + u.uy.at(c, i, j);
        if (i > 0) v -= u.ux.at(c, i - 1, j);
        if (j > 0) v -= u.uy.at(c, i, j - 1);
        out.at(c, i, j) = v * inv;
      }
    }
  }
  return out;
}

FluxField grad_x(const Field& phi, const GridSpec& grid) {
  const int n = grid.n;
  require(phi.n() == n, ErrorKind::DimensionMismatch,
          "grad_x: field does not match grid");
  const double inv = 1.0 / grid.dx;
  FluxField g(n, phi.components());
  for (int c = 0; c < phi.components(); ++c) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i + 1 < n) g.ux.at(c, i, j) = (phi.at(c, i + 1, j) - phi.at(c, i, j)) * inv;
        if (j + 1 < n) g.uy.at(c, i, j) = (phi.at(c, i, j + 1) - phi.at(c, i, j)) * inv;
      }
    }
  }
  return g;
}

double lambda_max_spatial_bound(const GridSpec& grid) {
  const double m = grid.n - 1;
  return 8.0 * m * m;
}

}  // namespace omt
