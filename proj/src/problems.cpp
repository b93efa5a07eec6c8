#include "omt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "omt/error.hpp"
#include "omt/pdhg.hpp"

namespace omt {

VectorDensity gen_rgb_disks(const std::vector<DiskSpec>& specs, int n,
                            int channels) {
  require(!specs.empty(), ErrorKind::InvalidArgument, "no disks given");
  require(channels >= 1, ErrorKind::InvalidArgument, "need a channel");
  const GridSpec grid(n);
  Field f(n, channels);
  for (const auto& d : specs) {
    require(d.channel >= 0 && d.channel < channels,
            ErrorKind::InvalidArgument, "disk channel out of range");
    require(d.radius > 0.0 && d.mass > 0.0, ErrorKind::InvalidArgument,
            "disk radius and mass must be positive");
    // The part outside the unit square is clipped, so a large disk can cover
    // the whole domain.
    require(d.x >= 0.0 && d.x <= 1.0 && d.y >= 0.0 && d.y <= 1.0,
            ErrorKind::InvalidArgument, "disk center outside the unit square");
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (std::hypot(grid.coord(i) - d.x, grid.coord(j) - d.y) < d.radius)
          cells.emplace_back(i, j);
    require(!cells.empty(), ErrorKind::InvalidArgument,
            "disk covers no cell center at this resolution");
    const double share = d.mass / static_cast<double>(cells.size());
    for (auto [i, j] : cells) f.at(d.channel, i, j) += share;
  }
  return VectorDensity::normalized(std::move(f));
}

MatrixDensity gen_matrix_blobs(const std::vector<BlobSpec>& specs, int n) {
  require(!specs.empty(), ErrorKind::InvalidArgument, "no blobs given");
  const int k = specs.front().matrix.dim();
  require(k >= 1, ErrorKind::InvalidArgument, "blob matrix is empty");
  const GridSpec grid(n);
  std::vector<HermitianMatrix> pixels(grid.cells(),
                                      HermitianMatrix(k));
  for (const auto& b : specs) {
    require(b.matrix.dim() == k, ErrorKind::DimensionMismatch,
            "blobs have different matrix sizes");
    require(b.radius > 0.0 && b.mass > 0.0, ErrorKind::InvalidArgument,
            "blob radius and mass must be positive");
    require(min_eigenvalue(b.matrix) >= -MatrixDensity::kPsdTolerance,
            ErrorKind::InvalidArgument, "blob matrix is not PSD");
    const double tr = b.matrix.trace();
    require(tr > 0.0, ErrorKind::InvalidArgument, "blob matrix has zero trace");
    std::vector<double> bump(grid.cells(), 0.0);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double r = std::hypot(grid.coord(i) - b.x, grid.coord(j) - b.y);
        if (r >= b.radius) continue;
        const double t = 1.0 - (r / b.radius) * (r / b.radius);
        bump[grid.index(i, j)] = t * t;
        total += t * t;
      }
    }
    require(total > 0.0, ErrorKind::InvalidArgument,
            "blob covers no cell center at this resolution");
    for (std::size_t c = 0; c < bump.size(); ++c)
      if (bump[c] > 0.0) {
        HermitianMatrix m = b.matrix;
        m *= b.mass * bump[c] / (total * tr);
        pixels[c] += m;
      }
  }
  return MatrixDensity::normalized(matrix_field(n, k, pixels), k);
}

ScalarDensity gen_scalar_gaussians(const std::vector<GaussianSpec>& specs,
                                   int n) {
  require(!specs.empty(), ErrorKind::InvalidArgument, "no bumps given");
  const GridSpec grid(n);
  Field f(n, 1);
  for (const auto& g : specs) {
    require(g.width > 0.0 && g.weight > 0.0 && g.cutoff > 0.0,
            ErrorKind::InvalidArgument,
            "bump width, weight and cutoff must be positive");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double r = std::hypot(grid.coord(i) - g.x, grid.coord(j) - g.y);
        if (r > g.cutoff * g.width) continue;
        f.at(0, i, j) += g.weight * std::exp(-r * r / (2.0 * g.width * g.width));
      }
  }
  return ScalarDensity::normalized(std::move(f));
}

namespace presets {

namespace {

std::vector<DiskSpec> rgb(int a, int b, int c) {
  const double m = 1.0 / 3.0;
  return {{0.3, 0.3, 0.12, a, m}, {0.7, 0.3, 0.12, b, m},
          {0.5, 0.75, 0.12, c, m}};
}

BlobSpec dti_blob(double x, double a, double b, double c) {
  const double d[] = {a, b, c};
  return {x, 0.5, 0.1, HermitianMatrix::diagonal(d), 1.0};
}

}  // namespace

std::vector<DiskSpec> rgb_source() { return rgb(0, 1, 2); }
std::vector<DiskSpec> rgb_target() { return rgb(1, 2, 0); }

std::vector<BlobSpec> dti_lambda0() { return {dti_blob(0.3, 0.4, 0.3, 0.3)}; }
std::vector<BlobSpec> dti_lambda1() { return {dti_blob(0.3, 0.3, 0.4, 0.3)}; }
std::vector<BlobSpec> dti_lambda2() { return {dti_blob(0.7, 0.4, 0.3, 0.3)}; }

double dti_tau(DtiPair pair, int n, double alpha) {
  switch (pair) {
    case DtiPair::Colocated01:
      return 0.8 * (n - 1) * std::max(1.0, alpha);
    case DtiPair::Translated02:
      return default_tau(n);
    case DtiPair::Mixed12:
      return 0.3 * default_tau_matrix(n) * std::max(1.0, std::sqrt(alpha));
  }
  return default_tau_matrix(n);
}

}  // namespace presets

ScalarDensity random_scalar_density(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Field f(n, 1);
  for (double& v : f.data()) v = u(rng);
  return ScalarDensity::normalized(std::move(f));
}

VectorDensity random_vector_density(int n, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Field f(n, k);
  for (double& v : f.data()) v = u(rng);
  return VectorDensity::normalized(std::move(f));
}

MatrixDensity random_matrix_density(int n, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<HermitianMatrix> pixels;
  pixels.reserve(static_cast<std::size_t>(n) * n);
  for (int c = 0; c < n * n; ++c) {
    CMatrix a(k, k);
    for (int r = 0; r < k; ++r)
      for (int s = 0; s < k; ++s) a(r, s) = Complex(g(rng), g(rng));
    CMatrix m = a * a.adjoint() + 0.1 * CMatrix::Identity(k, k);
    pixels.push_back(HermitianMatrix::from_dense(m, 1e-9));
  }
  return MatrixDensity::normalized(matrix_field(n, k, pixels), k);
}

}  // namespace omt
