#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "omt/grid.hpp"
#include "omt/hermitian.hpp"

namespace omt {

/// Per-pixel payload stored plane by plane: component c of pixel (i, j) lives
/// at data[c * n * n + i * n + j]. Row index i runs along x.
class Field {
 public:
  Field() = default;
  Field(int n, int components, double fill = 0.0);

  int n() const { return n_; }
  int components() const { return comps_; }
  std::size_t plane_size() const { return static_cast<std::size_t>(n_) * n_; }

  double& at(int c, int i, int j) { return data_[offset(c, i, j)]; }
  double at(int c, int i, int j) const { return data_[offset(c, i, j)]; }

  std::span<double> plane(int c) {
    return {data_.data() + c * plane_size(), plane_size()};
  }
  std::span<const double> plane(int c) const {
    return {data_.data() + c * plane_size(), plane_size()};
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  void fill(double v);
  bool same_shape(const Field& o) const {
    return n_ == o.n_ && comps_ == o.comps_;
  }

  friend bool operator==(const Field& a, const Field& b) = default;

 private:
  std::size_t offset(int c, int i, int j) const {
    return c * plane_size() + static_cast<std::size_t>(i) * n_ + j;
  }

  int n_ = 0;
  int comps_ = 0;
  std::vector<double> data_;
};

double dot(const Field& a, const Field& b);
double norm2(const Field& a);

/// Staggered spatial flux. ux(c, i, j) is the flux through the face between
/// cells (i, j) and (i+1, j); uy(c, i, j) the one between (i, j) and (i, j+1).
/// The ghost samples ux(c, n-1, j) and uy(c, i, n-1) are identically zero.
struct FluxField {
  Field ux;
  Field uy;

  FluxField() = default;
  FluxField(int n, int components) : ux(n, components), uy(n, components) {}

  int n() const { return ux.n(); }
  int components() const { return ux.components(); }
  bool ghosts_zero() const;
  void zero_ghosts();
};

// ------------------------------------------------------------- densities

/// Unit-mass nonnegative density with one value per cell.
class ScalarDensity {
 public:
  /// Validates nonnegativity and unit mass (within `mass_tol`).
  static ScalarDensity from_field(Field values, double mass_tol = 1e-12);
  /// Rescales to unit mass; throws InvalidArgument when the mass is zero.
  static ScalarDensity normalized(Field values);

  const Field& values() const { return values_; }
  GridSpec grid() const { return GridSpec(values_.n()); }

 private:
  explicit ScalarDensity(Field f) : values_(std::move(f)) {}
  Field values_;
};

/// Unit-mass nonnegative density with k channels per cell.
class VectorDensity {
 public:
  static VectorDensity from_field(Field values, double mass_tol = 1e-12);
  static VectorDensity normalized(Field values);

  const Field& values() const { return values_; }
  int channels() const { return values_.components(); }
  GridSpec grid() const { return GridSpec(values_.n()); }

 private:
  explicit VectorDensity(Field f) : values_(std::move(f)) {}
  Field values_;
};

/// Unit-trace field of k x k Hermitian PSD matrices, stored as k^2
/// orthonormal coordinate planes (see hermitian.hpp).
class MatrixDensity {
 public:
  static constexpr double kPsdTolerance = 1e-10;

  static MatrixDensity from_coords(Field coords, int k,
                                   double mass_tol = 1e-12);
  static MatrixDensity normalized(Field coords, int k);

  const Field& coords() const { return coords_; }
  int dim() const { return k_; }
  GridSpec grid() const { return GridSpec(coords_.n()); }
  HermitianMatrix at(int i, int j) const;

 private:
  MatrixDensity(Field f, int k) : coords_(std::move(f)), k_(k) {}
  Field coords_;
  int k_;
};

/// Sum of cell values; for matrix fields, the sum of traces.
double total_mass(const ScalarDensity& d);
double total_mass(const VectorDensity& d);
double total_mass(const MatrixDensity& d);
double total_mass(const Field& values);
double total_trace(const Field& coords, int k);

ScalarDensity normalize(const ScalarDensity& d);
VectorDensity normalize(const VectorDensity& d);
MatrixDensity normalize(const MatrixDensity& d);

/// Builds a coordinate field from per-pixel matrices (row-major over pixels).
Field matrix_field(int n, int k, const std::vector<HermitianMatrix>& pixels);

}  // namespace omt
