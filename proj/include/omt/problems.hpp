#pragma once

#include <cstdint>
#include <vector>

#include "omt/field.hpp"
#include "omt/hermitian.hpp"

namespace omt {

/// Uniform disk of mass `mass` placed in one channel. Cells whose center lies
/// inside the disk (distance < radius) receive an equal share of the mass.
struct DiskSpec {
  double x = 0.5;
  double y = 0.5;
  double radius = 0.1;
  int channel = 0;
  double mass = 1.0;
};

/// Matrix-valued blob: `matrix` times the bump (1 - (r/radius)^2)^2, scaled so
/// that the blob carries total trace `mass`.
struct BlobSpec {
  double x = 0.5;
  double y = 0.5;
  double radius = 0.1;
  HermitianMatrix matrix;
  double mass = 1.0;
};

/// exp(-r^2 / (2 width^2)) truncated at `cutoff` widths.
struct GaussianSpec {
  double x = 0.5;
  double y = 0.5;
  double width = 0.1;
  double weight = 1.0;
  double cutoff = 3.0;
};

VectorDensity gen_rgb_disks(const std::vector<DiskSpec>& specs, int n,
                            int channels = 3);
MatrixDensity gen_matrix_blobs(const std::vector<BlobSpec>& specs, int n);
ScalarDensity gen_scalar_gaussians(const std::vector<GaussianSpec>& specs,
                                   int n);

namespace presets {

// Three equal-mass disks of radius 0.12 at (0.3,0.3), (0.7,0.3), (0.5,0.75)
// colored R, G, B.
std::vector<DiskSpec> rgb_source();
// Same disks with the colors rotated: G, B, R.
std::vector<DiskSpec> rgb_target();

// Diffusion-tensor style fields for k = 3: lambda0 and lambda1 share one
// location with different tensors, lambda2 is lambda0 moved 0.4 along x.
std::vector<BlobSpec> dti_lambda0();
std::vector<BlobSpec> dti_lambda1();
std::vector<BlobSpec> dti_lambda2();

enum class DtiPair { Colocated01, Translated02, Mixed12 };

// Dual step for one pair of the DTI fields, tuned on iteration counts. The
// colocated pair moves mass only between matrix entries: its potential grows
// with alpha, and the spatial step shrinks like 1/(n-1)^2, so the best tau
// grows with both. The translated pair is pure spatial transport.
double dti_tau(DtiPair pair, int n, double alpha);

}  // namespace presets

// Seeded random fixtures for tests and benchmarks. Every cell receives a
// strictly positive value (PSD matrix) before normalization.
ScalarDensity random_scalar_density(int n, std::uint64_t seed);
VectorDensity random_vector_density(int n, int k, std::uint64_t seed);
MatrixDensity random_matrix_density(int n, int k, std::uint64_t seed);

}  // namespace omt
