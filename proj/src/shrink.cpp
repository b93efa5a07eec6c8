#include "omt/shrink.hpp"

#include <algorithm>
#include <cmath>

#include "omt/error.hpp"

namespace omt {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

using SmallCMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0,
                  PayloadShape::kMaxMatrixDim, PayloadShape::kMaxMatrixDim>;

void check_pairing(const NormChoice& norm, std::size_t size) {
  require(valid_pairing(norm.family, norm.shape), ErrorKind::InvalidArgument,
          "norm " + norm_family_name(norm.family) +
              " does not apply to this payload");
  require(static_cast<int>(size) == norm.shape.size(),
          ErrorKind::DimensionMismatch, "payload size does not match shape");
}

double euclid(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// Rows of matrix kind: the first k coordinates are diagonal entries, the
// remaining ones come in (re, im) pairs equal to sqrt2 times an off-diagonal
// entry of H (H = Z or H = -iZ).
double matrix_row_l1(std::span<const double> row, int k) {
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += std::abs(row[i]);
  for (std::size_t p = k; p < row.size(); p += 2)
    s += kSqrt2 * std::hypot(row[p], row[p + 1]);
  return s;
}

double matrix_row_linf(std::span<const double> row, int k) {
  double s = 0.0;
  for (int i = 0; i < k; ++i) s = std::max(s, std::abs(row[i]));
  for (std::size_t p = k; p < row.size(); p += 2)
    s = std::max(s, std::hypot(row[p], row[p + 1]) / kSqrt2);
  return s;
}

void matrix_row_l1_shrink(std::span<double> row, int k, double mu) {
  for (int i = 0; i < k; ++i) row[i] = shrink1(row[i], mu);
  for (std::size_t p = k; p < row.size(); p += 2)
    shrink2_inplace(row.subspan(p, 2), kSqrt2 * mu);
}

// The Hermitian matrix H carried by a coordinate row (skew rows carry -iZ).
SmallCMatrix row_to_hermitian(std::span<const double> row, int k) {
  SmallCMatrix h(k, k);
  for (int i = 0; i < k; ++i) h(i, i) = Complex(row[i], 0.0);
  int p = k;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j, p += 2) {
      const Complex v(row[p] / kSqrt2, row[p + 1] / kSqrt2);
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

void hermitian_to_row(const SmallCMatrix& h, int k, std::span<double> row) {
  for (int i = 0; i < k; ++i) row[i] = h(i, i).real();
  int p = k;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j, p += 2) {
      // Average the mirrored entries so rounding never breaks the structure.
      const Complex v = 0.5 * (h(i, j) + std::conj(h(j, i)));
      row[p] = kSqrt2 * v.real();
      row[p + 1] = kSqrt2 * v.imag();
    }
  }
}

Eigen::Matrix<double, Eigen::Dynamic, 1, 0, PayloadShape::kMaxMatrixDim, 1>
row_eigenvalues(std::span<const double> row, int k) {
  Eigen::SelfAdjointEigenSolver<SmallCMatrix> es(row_to_hermitian(row, k),
                                                 Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, ErrorKind::Numerical,
          "eigensolve failed in nuclear norm");
  return es.eigenvalues();
}

// Singular values of a Hermitian (or i * Hermitian) matrix are the moduli of
// the eigenvalues of the Hermitian representative, so skew rows need no
// special handling once mapped to H = -iZ.
void matrix_row_nuc_shrink(std::span<double> row, int k, double mu) {
  Eigen::SelfAdjointEigenSolver<SmallCMatrix> es(row_to_hermitian(row, k),
                                                 Eigen::ComputeEigenvectors);
  require(es.info() == Eigen::Success, ErrorKind::Numerical,
          "eigensolve failed in nuclear shrink");
  auto lam = es.eigenvalues();
  for (int i = 0; i < k; ++i) {
    const double a = std::abs(lam(i));
    lam(i) = a <= mu ? 0.0 : std::copysign(a - mu, lam(i));
  }
  const auto& v = es.eigenvectors();
  const SmallCMatrix h = v * lam.cast<Complex>().asDiagonal() * v.adjoint();
  hermitian_to_row(h, k, row);
}

double matrix_row_nuclear(std::span<const double> row, int k) {
  return row_eigenvalues(row, k).cwiseAbs().sum();
}

double matrix_row_spectral(std::span<const double> row, int k) {
  return row_eigenvalues(row, k).cwiseAbs().maxCoeff();
}

template <class Fn>
void for_each_row(std::span<double> x, const PayloadShape& s, Fn&& fn) {
  for (int r = 0; r < s.rows; ++r)
    fn(x.subspan(static_cast<std::size_t>(r) * s.row_size, s.row_size));
}

template <class Fn>
void for_each_row(std::span<const double> x, const PayloadShape& s, Fn&& fn) {
  for (int r = 0; r < s.rows; ++r)
    fn(x.subspan(static_cast<std::size_t>(r) * s.row_size, s.row_size));
}

}  // namespace

// ------------------------------------------------------------------ shapes

PayloadShape PayloadShape::real(int rows, int row_size) {
  require(rows >= 1 && row_size >= 1, ErrorKind::InvalidArgument,
          "invalid payload shape");
  return {EntryKind::Real, rows, row_size, 0};
}

PayloadShape PayloadShape::hermitian(int rows, int k) {
  require(rows >= 1 && k >= 1 && k <= kMaxMatrixDim,
          ErrorKind::InvalidArgument, "matrix payload needs 1 <= k <= 8");
  return {EntryKind::Hermitian, rows, k * k, k};
}

PayloadShape PayloadShape::skew(int rows, int k) {
  require(rows >= 1 && k >= 1 && k <= kMaxMatrixDim,
          ErrorKind::InvalidArgument, "matrix payload needs 1 <= k <= 8");
  return {EntryKind::SkewHermitian, rows, k * k, k};
}

bool valid_pairing(NormFamily family, const PayloadShape& shape) {
  if (family == NormFamily::NuclearSum) return shape.is_matrix();
  return true;
}

NormFamily parse_norm_family(std::string_view name) {
  if (name == "l2") return NormFamily::EuclideanAll;
  if (name == "l12") return NormFamily::GroupRows;
  if (name == "l1") return NormFamily::ElementwiseL1;
  if (name == "l1nuc") return NormFamily::NuclearSum;
  fail(ErrorKind::InvalidArgument, "unknown norm '" + std::string(name) +
                                       "' (expected l2, l12, l1, l1nuc)");
}

std::string norm_family_name(NormFamily family) {
  switch (family) {
    case NormFamily::EuclideanAll: return "l2";
    case NormFamily::GroupRows: return "l12";
    case NormFamily::ElementwiseL1: return "l1";
    case NormFamily::NuclearSum: return "l1nuc";
  }
  return "?";
}

// -------------------------------------------------------------- primitives

Complex shrink1(Complex x, double mu) {
  const double a = std::abs(x);
  if (a <= mu) return {0.0, 0.0};
  return (1.0 - mu / a) * x;
}

double shrink1(double x, double mu) {
  const double a = std::abs(x);
  if (a <= mu) return 0.0;
  return std::copysign(a - mu, x);
}

void shrink2_inplace(std::span<double> x, double mu) {
  const double a = euclid(x);
  if (a <= mu) {
    std::fill(x.begin(), x.end(), 0.0);
    return;
  }
  const double f = 1.0 - mu / a;
  for (double& v : x) v *= f;
}

Eigen::VectorXd shrink2(const Eigen::VectorXd& x, double mu) {
  Eigen::VectorXd y = x;
  shrink2_inplace(std::span<double>(y.data(), y.size()), mu);
  return y;
}

Eigen::VectorXcd shrink2(const Eigen::VectorXcd& x, double mu) {
  const double a = x.norm();
  if (a <= mu) return Eigen::VectorXcd::Zero(x.size());
  return (1.0 - mu / a) * x;
}

HermitianMatrix shrink_nuc(const HermitianMatrix& x, double mu) {
  const int k = x.dim();
  require(k <= PayloadShape::kMaxMatrixDim, ErrorKind::InvalidArgument,
          "shrink_nuc supports k <= 8");
  auto c = x.coords();
  matrix_row_nuc_shrink(c, k, mu);
  return HermitianMatrix::from_coords(c, k);
}

SkewHermitianMatrix shrink_nuc(const SkewHermitianMatrix& x, double mu) {
  const int k = x.dim();
  require(k <= PayloadShape::kMaxMatrixDim, ErrorKind::InvalidArgument,
          "shrink_nuc supports k <= 8");
  auto c = x.coords();
  matrix_row_nuc_shrink(c, k, mu);
  return SkewHermitianMatrix::from_coords(c, k);
}

CMatrix shrink_nuc(const CMatrix& x, double mu) {
  Eigen::JacobiSVD<CMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = std::max(s(i) - mu, 0.0);
  return svd.matrixU() * s.cast<Complex>().asDiagonal() *
         svd.matrixV().adjoint();
}

// ----------------------------------------------------------- payload level

double norm_value(std::span<const double> x, const NormChoice& norm) {
  check_pairing(norm, x.size());
  return detail::norm_value_unchecked(x, norm);
}

double dual_norm(std::span<const double> x, const NormChoice& norm) {
  check_pairing(norm, x.size());
  return detail::dual_norm_unchecked(x, norm);
}

void shrink_inplace(std::span<double> x, double mu, const NormChoice& norm) {
  check_pairing(norm, x.size());
  detail::shrink_inplace_unchecked(x, mu, norm);
}

namespace detail {

double norm_value_unchecked(std::span<const double> x, const NormChoice& norm) {
  const auto& s = norm.shape;
  double acc = 0.0;
  switch (norm.family) {
    case NormFamily::EuclideanAll:
      return euclid(x);
    case NormFamily::GroupRows:
      for_each_row(x, s, [&](std::span<const double> r) { acc += euclid(r); });
      return acc;
    case NormFamily::ElementwiseL1:
      if (!s.is_matrix()) {
        for (double v : x) acc += std::abs(v);
        return acc;
      }
      for_each_row(x, s, [&](std::span<const double> r) {
        acc += matrix_row_l1(r, s.dim);
      });
      return acc;
    case NormFamily::NuclearSum:
      for_each_row(x, s, [&](std::span<const double> r) {
        acc += matrix_row_nuclear(r, s.dim);
      });
      return acc;
  }
  return acc;
}

double dual_norm_unchecked(std::span<const double> x, const NormChoice& norm) {
  const auto& s = norm.shape;
  double acc = 0.0;
  switch (norm.family) {
    case NormFamily::EuclideanAll:
      return euclid(x);
    case NormFamily::GroupRows:
      for_each_row(x, s, [&](std::span<const double> r) {
        acc = std::max(acc, euclid(r));
      });
      return acc;
    case NormFamily::ElementwiseL1:
      if (!s.is_matrix()) {
        for (double v : x) acc = std::max(acc, std::abs(v));
        return acc;
      }
      for_each_row(x, s, [&](std::span<const double> r) {
        acc = std::max(acc, matrix_row_linf(r, s.dim));
      });
      return acc;
    case NormFamily::NuclearSum:
      for_each_row(x, s, [&](std::span<const double> r) {
        acc = std::max(acc, matrix_row_spectral(r, s.dim));
      });
      return acc;
  }
  return acc;
}

void shrink_inplace_unchecked(std::span<double> x, double mu,
                              const NormChoice& norm) {
  const auto& s = norm.shape;
  switch (norm.family) {
    case NormFamily::EuclideanAll:
      shrink2_inplace(x, mu);
      return;
    case NormFamily::GroupRows:
      for_each_row(x, s, [&](std::span<double> r) { shrink2_inplace(r, mu); });
      return;
    case NormFamily::ElementwiseL1:
      if (!s.is_matrix()) {
        for (double& v : x) v = shrink1(v, mu);
        return;
      }
      for_each_row(x, s, [&](std::span<double> r) {
        matrix_row_l1_shrink(r, s.dim, mu);
      });
      return;
    case NormFamily::NuclearSum:
      for_each_row(x, s, [&](std::span<double> r) {
        matrix_row_nuc_shrink(r, s.dim, mu);
      });
      return;
  }
}

}  // namespace detail

std::vector<double> shrink_norm(std::span<const double> x, double mu,
                                const NormChoice& norm) {
  std::vector<double> y(x.begin(), x.end());
  shrink_inplace(y, mu, norm);
  return y;
}

std::vector<double> shrink_regularized(std::span<const double> x, double mu,
                                       double eps, const NormChoice& norm) {
  require(eps >= 0.0, ErrorKind::InvalidArgument, "eps must be >= 0");
  require(eps == 0.0 || norm.family != NormFamily::NuclearSum,
          ErrorKind::InvalidArgument,
          "regularized shrink is not available for the nuclear norm");
  std::vector<double> y = shrink_norm(x, mu, norm);
  if (eps > 0.0) {
    const double f = 1.0 / (1.0 + 2.0 * mu * eps);
    for (double& v : y) v *= f;
  }
  return y;
}

}  // namespace omt
