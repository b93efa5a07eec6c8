#pragma once

#include "omt/field.hpp"
#include "omt/grid.hpp"

namespace omt {

/// Staggered divergence with zero-flux boundary:
///   div(u)_ij = (ux_ij - ux_(i-1)j + uy_ij - uy_i(j-1)) / dx,
/// with out-of-range samples read as zero. Applied to every payload component.
/// Throws InvalidArgument when a ghost sample of `u` is non-zero.
Field div_x(const FluxField& u, const GridSpec& grid);

/// Forward-difference gradient; the ghost row/column of the result is zero.
/// Exactly the negative transpose of div_x on admissible fluxes.
FluxField grad_x(const Field& phi, const GridSpec& grid);

/// Upper bound 8 / dx^2 = 8 (n-1)^2 on the largest eigenvalue of -div o grad.
double lambda_max_spatial_bound(const GridSpec& grid);

}  // namespace omt
