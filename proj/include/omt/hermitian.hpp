#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace omt {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Real dimension of the space of k x k Hermitian (or skew-Hermitian) matrices.
constexpr int hermitian_coord_count(int k) { return k * k; }

// Coordinates of a k x k Hermitian matrix in the Hilbert-Schmidt orthonormal
// basis {E_ii} u {(E_ij + E_ji)/sqrt2} u {i(E_ij - E_ji)/sqrt2}, i < j.
// Layout: k diagonal coordinates first, then one (sym, antisym) pair per
// upper-triangular position in row-major order. Skew-Hermitian matrices use
// the same coordinates applied to -iZ, so both spaces are Euclidean R^{k^2}.
int offdiag_pair_index(int k, int i, int j);

/// k x k Hermitian matrix; the diagonal is stored as reals and only the strict
/// upper triangle is stored, so M = M* holds by construction.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(int k = 1);

  static HermitianMatrix identity(int k);
  /// Throws DimensionMismatch for non-square input and InvalidArgument when
  /// |M - M*| exceeds `tol` anywhere.
  static HermitianMatrix from_dense(const CMatrix& m, double tol = 1e-12);
  static HermitianMatrix from_coords(std::span<const double> coords, int k);
  static HermitianMatrix diagonal(std::span<const double> d);

  int dim() const { return k_; }
  Complex operator()(int i, int j) const;
  /// Sets entry (i, j) and its mirror. Diagonal entries keep only the real part.
  void set(int i, int j, Complex v);

  CMatrix dense() const;
  void to_coords(std::span<double> out) const;
  std::vector<double> coords() const;
  double trace() const;

  HermitianMatrix& operator+=(const HermitianMatrix& o);
  HermitianMatrix& operator-=(const HermitianMatrix& o);
  HermitianMatrix& operator*=(double s);

 private:
  int k_;
  std::vector<double> diag_;
  std::vector<Complex> upper_;
};

/// k x k skew-Hermitian matrix (Z = -Z*), stored as the imaginary parts of the
/// diagonal plus the strict upper triangle.
class SkewHermitianMatrix {
 public:
  explicit SkewHermitianMatrix(int k = 1);

  static SkewHermitianMatrix from_dense(const CMatrix& m, double tol = 1e-12);
  static SkewHermitianMatrix from_coords(std::span<const double> coords, int k);

  int dim() const { return k_; }
  Complex operator()(int i, int j) const;
  /// Sets entry (i, j) and -conj at (j, i). Diagonal entries keep only the
  /// imaginary part.
  void set(int i, int j, Complex v);

  CMatrix dense() const;
  void to_coords(std::span<double> out) const;
  std::vector<double> coords() const;

  SkewHermitianMatrix& operator+=(const SkewHermitianMatrix& o);
  SkewHermitianMatrix& operator-=(const SkewHermitianMatrix& o);
  SkewHermitianMatrix& operator*=(double s);

 private:
  int k_;
  std::vector<double> diag_imag_;
  std::vector<Complex> upper_;
};

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b);
HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b);
HermitianMatrix operator*(double s, HermitianMatrix a);
SkewHermitianMatrix operator+(SkewHermitianMatrix a, const SkewHermitianMatrix& b);
SkewHermitianMatrix operator-(SkewHermitianMatrix a, const SkewHermitianMatrix& b);
SkewHermitianMatrix operator*(double s, SkewHermitianMatrix a);

/// Hilbert-Schmidt inner product Re tr(X Y*).
double hs_inner(const HermitianMatrix& x, const HermitianMatrix& y);
double hs_inner(const SkewHermitianMatrix& x, const SkewHermitianMatrix& y);
double hs_inner(const CMatrix& x, const CMatrix& y);

/// Dense matrix of the Hermitian (skew = false) or skew-Hermitian (skew = true)
/// element with the given orthonormal coordinates.
CMatrix dense_from_coords(std::span<const double> coords, int k, bool skew);
/// Inverse of dense_from_coords; only the upper triangle and diagonal are read.
void coords_from_dense(const CMatrix& m, bool skew, std::span<double> out);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const HermitianMatrix& m);

}  // namespace omt
