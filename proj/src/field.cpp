#include "omt/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "omt/error.hpp"

namespace omt {

Field::Field(int n, int components, double fill)
    : n_(n), comps_(components) {
  require(n >= 1 && components >= 0, ErrorKind::InvalidArgument,
          "invalid field shape");
  data_.assign(static_cast<std::size_t>(components) * n * n, fill);
}

void Field::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

double dot(const Field& a, const Field& b) {
  require(a.same_shape(b), ErrorKind::DimensionMismatch,
          "dot: field shape mismatch");
  const auto x = a.data();
  const auto y = b.data();
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(const Field& a) { return std::sqrt(dot(a, a)); }

bool FluxField::ghosts_zero() const {
  const int n = ux.n();
  for (int c = 0; c < ux.components(); ++c) {
    for (int k = 0; k < n; ++k) {
      if (ux.at(c, n - 1, k) != 0.0 || uy.at(c, k, n - 1) != 0.0) return false;
    }
  }
  return true;
}

void FluxField::zero_ghosts() {
  const int n = ux.n();
  for (int c = 0; c < ux.components(); ++c) {
    for (int k = 0; k < n; ++k) {
      ux.at(c, n - 1, k) = 0.0;
      uy.at(c, k, n - 1) = 0.0;
    }
  }
}

namespace {

void check_nonnegative(const Field& f) {
  for (double v : f.data()) {
    require(std::isfinite(v) && v >= 0.0, ErrorKind::InvalidArgument,
            "density has negative or non-finite entries");
  }
}

void check_mass(double mass, double tol) {
  require(std::abs(mass - 1.0) <= tol, ErrorKind::InvalidArgument,
          "density does not have unit mass (mass = " + std::to_string(mass) +
              ")");
}

Field scaled(Field f, double mass) {
  require(mass > 0.0 && std::isfinite(mass), ErrorKind::InvalidArgument,
          "cannot normalize a field with zero mass");
  for (double& v : f.data()) v /= mass;
  return f;
}

void check_psd(const Field& coords, int k) {
  std::vector<double> c(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < coords.n(); ++i) {
    for (int j = 0; j < coords.n(); ++j) {
      for (int p = 0; p < k * k; ++p) c[p] = coords.at(p, i, j);
      const double lo = min_eigenvalue(HermitianMatrix::from_coords(c, k));
      require(lo >= -MatrixDensity::kPsdTolerance, ErrorKind::InvalidArgument,
              "matrix density is not positive semidefinite at pixel (" +
                  std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
}

}  // namespace

double total_mass(const Field& values) {
  double s = 0.0;
  for (double v : values.data()) s += v;
  return s;
}

double total_trace(const Field& coords, int k) {
  // Diagonal entries are the first k coordinates.
  double s = 0.0;
  for (int c = 0; c < k; ++c)
    for (double v : coords.plane(c)) s += v;
  return s;
}

ScalarDensity ScalarDensity::from_field(Field values, double mass_tol) {
  require(values.components() == 1, ErrorKind::DimensionMismatch,
          "scalar density needs exactly one component");
  check_nonnegative(values);
  check_mass(total_mass(values), mass_tol);
  return ScalarDensity(std::move(values));
}

ScalarDensity ScalarDensity::normalized(Field values) {
  require(values.components() == 1, ErrorKind::DimensionMismatch,
          "scalar density needs exactly one component");
  check_nonnegative(values);
  const double m = total_mass(values);
  return ScalarDensity(scaled(std::move(values), m));
}

VectorDensity VectorDensity::from_field(Field values, double mass_tol) {
  require(values.components() >= 1, ErrorKind::DimensionMismatch,
          "vector density needs at least one channel");
  check_nonnegative(values);
  check_mass(total_mass(values), mass_tol);
  return VectorDensity(std::move(values));
}

VectorDensity VectorDensity::normalized(Field values) {
  require(values.components() >= 1, ErrorKind::DimensionMismatch,
          "vector density needs at least one channel");
  check_nonnegative(values);
  const double m = total_mass(values);
  return VectorDensity(scaled(std::move(values), m));
}

MatrixDensity MatrixDensity::from_coords(Field coords, int k, double mass_tol) {
  require(k >= 1 && coords.components() == k * k,
          ErrorKind::DimensionMismatch, "matrix density needs k^2 components");
  check_psd(coords, k);
  check_mass(total_trace(coords, k), mass_tol);
  return MatrixDensity(std::move(coords), k);
}

MatrixDensity MatrixDensity::normalized(Field coords, int k) {
  require(k >= 1 && coords.components() == k * k,
          ErrorKind::DimensionMismatch, "matrix density needs k^2 components");
  check_psd(coords, k);
  const double m = total_trace(coords, k);
  return MatrixDensity(scaled(std::move(coords), m), k);
}

HermitianMatrix MatrixDensity::at(int i, int j) const {
  std::vector<double> c(static_cast<std::size_t>(k_) * k_);
  for (int p = 0; p < k_ * k_; ++p) c[p] = coords_.at(p, i, j);
  return HermitianMatrix::from_coords(c, k_);
}

double total_mass(const ScalarDensity& d) { return total_mass(d.values()); }
double total_mass(const VectorDensity& d) { return total_mass(d.values()); }
double total_mass(const MatrixDensity& d) {
  return total_trace(d.coords(), d.dim());
}

ScalarDensity normalize(const ScalarDensity& d) {
  return ScalarDensity::normalized(d.values());
}
VectorDensity normalize(const VectorDensity& d) {
  return VectorDensity::normalized(d.values());
}
MatrixDensity normalize(const MatrixDensity& d) {
  return MatrixDensity::normalized(d.coords(), d.dim());
}

Field matrix_field(int n, int k, const std::vector<HermitianMatrix>& pixels) {
  require(pixels.size() == static_cast<std::size_t>(n) * n,
          ErrorKind::DimensionMismatch, "need one matrix per pixel");
  Field f(n, k * k);
  std::vector<double> c(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& m = pixels[static_cast<std::size_t>(i) * n + j];
      require(m.dim() == k, ErrorKind::DimensionMismatch,
              "matrix dimension mismatch");
      m.to_coords(c);
      for (int p = 0; p < k * k; ++p) f.at(p, i, j) = c[p];
    }
  }
  return f;
}

}  // namespace omt
