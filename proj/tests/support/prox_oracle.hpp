#pragma once

#include <span>
#include <vector>

#include "omt/shrink.hpp"

namespace omt::testing {

// Brute-force prox of mu * ||.|| for any norm family, independent of the
// closed forms in shrink.cpp. Matrix rows are optimized as unstructured
// complex k x k matrices (2k^2 real unknowns, no Hermitian constraint) and
// the norm is evaluated on the dense entries.
//
// The non-smooth norm is replaced by its factored variational form:
//   ||v||_2   = min { (a^2 + ||w||^2) / 2 : v = a w }        (each group)
//   ||X||_nuc = min { (||A||^2 + ||B||^2) / 2 : X = A B^* }  (each row)
// which turns the prox into a smooth problem without a smoothing parameter.
// It is minimized by BFGS from a seeded random start; for these
// factorizations every local minimum is global.
//
// eps > 0 adds mu * eps * |z|^2 to the objective (not for the nuclear norm).
std::vector<double> prox_oracle(std::span<const double> x, double mu,
                                const NormChoice& norm, double eps = 0.0);

}  // namespace omt::testing
