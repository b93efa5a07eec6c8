#include "omt/hermitian.hpp"

#include <cmath>
#include <string>

#include "omt/error.hpp"

namespace omt {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

std::size_t upper_index(int k, int i, int j) {
  // Row-major position of (i, j), i < j, in the strict upper triangle.
  return static_cast<std::size_t>(i) * (2 * k - i - 1) / 2 + (j - i - 1);
}

void check_index(int k, int i, int j) {
  require(i >= 0 && j >= 0 && i < k && j < k, ErrorKind::InvalidArgument,
          "matrix index out of range");
}

void check_square(const CMatrix& m) {
  require(m.rows() == m.cols() && m.rows() > 0, ErrorKind::DimensionMismatch,
          "expected a non-empty square matrix");
}

}  // namespace

int offdiag_pair_index(int k, int i, int j) {
  return static_cast<int>(upper_index(k, i, j));
}

// ---------------------------------------------------------------- Hermitian

HermitianMatrix::HermitianMatrix(int k)
    : k_(k),
      diag_(static_cast<std::size_t>(k), 0.0),
      upper_(static_cast<std::size_t>(k) * (k - 1) / 2, Complex(0.0, 0.0)) {
  require(k >= 1, ErrorKind::InvalidArgument, "matrix dimension must be >= 1");
}

HermitianMatrix HermitianMatrix::identity(int k) {
  HermitianMatrix m(k);
  for (auto& d : m.diag_) d = 1.0;
  return m;
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
  HermitianMatrix m(static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m.diag_[i] = d[i];
  return m;
}

HermitianMatrix HermitianMatrix::from_dense(const CMatrix& m, double tol) {
  check_square(m);
  const int k = static_cast<int>(m.rows());
  HermitianMatrix h(k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      const Complex a = m(i, j);
      const Complex b = std::conj(m(j, i));
      require(std::abs(a - b) <= tol, ErrorKind::InvalidArgument,
              "matrix is not Hermitian");
      h.set(i, j, 0.5 * (a + b));
    }
  }
  return h;
}

HermitianMatrix HermitianMatrix::from_coords(std::span<const double> coords,
                                             int k) {
  require(static_cast<int>(coords.size()) == k * k,
          ErrorKind::DimensionMismatch, "coordinate count must be k^2");
  HermitianMatrix h(k);
  for (int i = 0; i < k; ++i) h.diag_[i] = coords[i];
  for (std::size_t p = 0; p < h.upper_.size(); ++p) {
    h.upper_[p] = Complex(coords[k + 2 * p], coords[k + 2 * p + 1]) / kSqrt2;
  }
  return h;
}

Complex HermitianMatrix::operator()(int i, int j) const {
  check_index(k_, i, j);
  if (i == j) return {diag_[i], 0.0};
  if (i < j) return upper_[upper_index(k_, i, j)];
  return std::conj(upper_[upper_index(k_, j, i)]);
}

void HermitianMatrix::set(int i, int j, Complex v) {
  check_index(k_, i, j);
  if (i == j) {
    diag_[i] = v.real();
  } else if (i < j) {
    upper_[upper_index(k_, i, j)] = v;
  } else {
    upper_[upper_index(k_, j, i)] = std::conj(v);
  }
}

CMatrix HermitianMatrix::dense() const {
  CMatrix m(k_, k_);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

void HermitianMatrix::to_coords(std::span<double> out) const {
  require(static_cast<int>(out.size()) == k_ * k_,
          ErrorKind::DimensionMismatch, "coordinate count must be k^2");
  for (int i = 0; i < k_; ++i) out[i] = diag_[i];
  for (std::size_t p = 0; p < upper_.size(); ++p) {
    out[k_ + 2 * p] = kSqrt2 * upper_[p].real();
    out[k_ + 2 * p + 1] = kSqrt2 * upper_[p].imag();
  }
}

std::vector<double> HermitianMatrix::coords() const {
  std::vector<double> c(static_cast<std::size_t>(k_) * k_);
  to_coords(c);
  return c;
}

double HermitianMatrix::trace() const {
  double t = 0.0;
  for (double d : diag_) t += d;
  return t;
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& o) {
  require(o.k_ == k_, ErrorKind::DimensionMismatch, "dimension mismatch");
  for (int i = 0; i < k_; ++i) diag_[i] += o.diag_[i];
  for (std::size_t p = 0; p < upper_.size(); ++p) upper_[p] += o.upper_[p];
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& o) {
  require(o.k_ == k_, ErrorKind::DimensionMismatch, "dimension mismatch");
  for (int i = 0; i < k_; ++i) diag_[i] -= o.diag_[i];
  for (std::size_t p = 0; p < upper_.size(); ++p) upper_[p] -= o.upper_[p];
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  for (auto& d : diag_) d *= s;
  for (auto& u : upper_) u *= s;
  return *this;
}

// ----------------------------------------------------------- skew-Hermitian

SkewHermitianMatrix::SkewHermitianMatrix(int k)
    : k_(k),
      diag_imag_(static_cast<std::size_t>(k), 0.0),
      upper_(static_cast<std::size_t>(k) * (k - 1) / 2, Complex(0.0, 0.0)) {
  require(k >= 1, ErrorKind::InvalidArgument, "matrix dimension must be >= 1");
}

SkewHermitianMatrix SkewHermitianMatrix::from_dense(const CMatrix& m,
                                                    double tol) {
  check_square(m);
  const int k = static_cast<int>(m.rows());
  SkewHermitianMatrix z(k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      const Complex a = m(i, j);
      const Complex b = -std::conj(m(j, i));
      require(std::abs(a - b) <= tol, ErrorKind::InvalidArgument,
              "matrix is not skew-Hermitian");
      z.set(i, j, 0.5 * (a + b));
    }
  }
  return z;
}

SkewHermitianMatrix SkewHermitianMatrix::from_coords(
    std::span<const double> coords, int k) {
  require(static_cast<int>(coords.size()) == k * k,
          ErrorKind::DimensionMismatch, "coordinate count must be k^2");
  // Z = iH with H the Hermitian element carrying these coordinates.
  SkewHermitianMatrix z(k);
  for (int i = 0; i < k; ++i) z.diag_imag_[i] = coords[i];
  for (std::size_t p = 0; p < z.upper_.size(); ++p) {
    const Complex h(coords[k + 2 * p], coords[k + 2 * p + 1]);
    z.upper_[p] = Complex(0.0, 1.0) * h / kSqrt2;
  }
  return z;
}

Complex SkewHermitianMatrix::operator()(int i, int j) const {
  check_index(k_, i, j);
  if (i == j) return {0.0, diag_imag_[i]};
  if (i < j) return upper_[upper_index(k_, i, j)];
  return -std::conj(upper_[upper_index(k_, j, i)]);
}

void SkewHermitianMatrix::set(int i, int j, Complex v) {
  check_index(k_, i, j);
  if (i == j) {
    diag_imag_[i] = v.imag();
  } else if (i < j) {
    upper_[upper_index(k_, i, j)] = v;
  } else {
    upper_[upper_index(k_, j, i)] = -std::conj(v);
  }
}

CMatrix SkewHermitianMatrix::dense() const {
  CMatrix m(k_, k_);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

void SkewHermitianMatrix::to_coords(std::span<double> out) const {
  require(static_cast<int>(out.size()) == k_ * k_,
          ErrorKind::DimensionMismatch, "coordinate count must be k^2");
  for (int i = 0; i < k_; ++i) out[i] = diag_imag_[i];
  for (std::size_t p = 0; p < upper_.size(); ++p) {
    const Complex h = Complex(0.0, -1.0) * upper_[p];
    out[k_ + 2 * p] = kSqrt2 * h.real();
    out[k_ + 2 * p + 1] = kSqrt2 * h.imag();
  }
}

std::vector<double> SkewHermitianMatrix::coords() const {
  std::vector<double> c(static_cast<std::size_t>(k_) * k_);
  to_coords(c);
  return c;
}

SkewHermitianMatrix& SkewHermitianMatrix::operator+=(
    const SkewHermitianMatrix& o) {
  require(o.k_ == k_, ErrorKind::DimensionMismatch, "dimension mismatch");
  for (int i = 0; i < k_; ++i) diag_imag_[i] += o.diag_imag_[i];
  for (std::size_t p = 0; p < upper_.size(); ++p) upper_[p] += o.upper_[p];
  return *this;
}

SkewHermitianMatrix& SkewHermitianMatrix::operator-=(
    const SkewHermitianMatrix& o) {
  require(o.k_ == k_, ErrorKind::DimensionMismatch, "dimension mismatch");
  for (int i = 0; i < k_; ++i) diag_imag_[i] -= o.diag_imag_[i];
  for (std::size_t p = 0; p < upper_.size(); ++p) upper_[p] -= o.upper_[p];
  return *this;
}

SkewHermitianMatrix& SkewHermitianMatrix::operator*=(double s) {
  for (auto& d : diag_imag_) d *= s;
  for (auto& u : upper_) u *= s;
  return *this;
}

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) {
  return a += b;
}
HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) {
  return a -= b;
}
HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
SkewHermitianMatrix operator+(SkewHermitianMatrix a,
                              const SkewHermitianMatrix& b) {
  return a += b;
}
SkewHermitianMatrix operator-(SkewHermitianMatrix a,
                              const SkewHermitianMatrix& b) {
  return a -= b;
}
SkewHermitianMatrix operator*(double s, SkewHermitianMatrix a) {
  return a *= s;
}

// ------------------------------------------------------------ inner products

double hs_inner(const CMatrix& x, const CMatrix& y) {
  require(x.rows() == y.rows() && x.cols() == y.cols(),
          ErrorKind::DimensionMismatch, "hs_inner: dimension mismatch");
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      s += x(i, j).real() * y(i, j).real() + x(i, j).imag() * y(i, j).imag();
  return s;
}

double hs_inner(const HermitianMatrix& x, const HermitianMatrix& y) {
  require(x.dim() == y.dim(), ErrorKind::DimensionMismatch,
          "hs_inner: dimension mismatch");
  // The coordinate basis is orthonormal, so the inner product is a plain dot.
  const auto a = x.coords();
  const auto b = y.coords();
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double hs_inner(const SkewHermitianMatrix& x, const SkewHermitianMatrix& y) {
  require(x.dim() == y.dim(), ErrorKind::DimensionMismatch,
          "hs_inner: dimension mismatch");
  const auto a = x.coords();
  const auto b = y.coords();
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

CMatrix dense_from_coords(std::span<const double> coords, int k, bool skew) {
  if (skew) return SkewHermitianMatrix::from_coords(coords, k).dense();
  return HermitianMatrix::from_coords(coords, k).dense();
}

void coords_from_dense(const CMatrix& m, bool skew, std::span<double> out) {
  check_square(m);
  const int k = static_cast<int>(m.rows());
  require(static_cast<int>(out.size()) == k * k, ErrorKind::DimensionMismatch,
          "coordinate count must be k^2");
  // Read the upper triangle of H = m (Hermitian) or H = -i m (skew).
  const Complex rot = skew ? Complex(0.0, -1.0) : Complex(1.0, 0.0);
  for (int i = 0; i < k; ++i) out[i] = (rot * m(i, i)).real();
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const Complex h = rot * m(i, j);
      const std::size_t p = upper_index(k, i, j);
      out[k + 2 * p] = kSqrt2 * h.real();
      out[k + 2 * p + 1] = kSqrt2 * h.imag();
    }
  }
}

double min_eigenvalue(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m.dense(), Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, ErrorKind::Numerical,
          "eigensolver failed");
  return es.eigenvalues().minCoeff();
}

}  // namespace omt
