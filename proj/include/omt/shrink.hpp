#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "omt/hermitian.hpp"

namespace omt {

/// Norm families with closed-form proximal operators.
enum class NormFamily {
  EuclideanAll,   // ||x||_2 over the whole payload
  GroupRows,      // sum over rows of ||row||_2
  ElementwiseL1,  // sum of entry moduli
  NuclearSum,     // sum over matrix rows of the nuclear norm
};

/// What a flat per-pixel payload looks like: `rows` consecutive rows of
/// `row_size` reals. Matrix rows hold k x k Hermitian or skew-Hermitian
/// matrices in the orthonormal coordinates of hermitian.hpp (row_size = k^2).
enum class EntryKind { Real, Hermitian, SkewHermitian };

struct PayloadShape {
  static constexpr int kMaxMatrixDim = 8;

  EntryKind kind = EntryKind::Real;
  int rows = 1;
  int row_size = 1;
  int dim = 0;

  static PayloadShape real(int rows, int row_size);
  static PayloadShape hermitian(int rows, int k);
  static PayloadShape skew(int rows, int k);

  int size() const { return rows * row_size; }
  bool is_matrix() const { return kind != EntryKind::Real; }
};

struct NormChoice {
  NormFamily family = NormFamily::EuclideanAll;
  PayloadShape shape;
};

bool valid_pairing(NormFamily family, const PayloadShape& shape);
/// CLI spelling: l2, l12, l1, l1nuc.
NormFamily parse_norm_family(std::string_view name);
std::string norm_family_name(NormFamily family);

// ----------------------------------------------------- primitive operators

/// argmin_z mu|z| + |z - x|^2 / 2. Returns 0 when |x| <= mu.
Complex shrink1(Complex x, double mu);
double shrink1(double x, double mu);
/// Block soft-thresholding; returns 0 when ||x||_2 <= mu.
Eigen::VectorXd shrink2(const Eigen::VectorXd& x, double mu);
Eigen::VectorXcd shrink2(const Eigen::VectorXcd& x, double mu);
void shrink2_inplace(std::span<double> x, double mu);

/// Singular-value soft-thresholding. The Hermitian and skew-Hermitian
/// overloads go through a Hermitian eigendecomposition and return the same
/// structure; the general overload uses an SVD.
HermitianMatrix shrink_nuc(const HermitianMatrix& x, double mu);
SkewHermitianMatrix shrink_nuc(const SkewHermitianMatrix& x, double mu);
CMatrix shrink_nuc(const CMatrix& x, double mu);

// ----------------------------------------------------------- payload level

double norm_value(std::span<const double> x, const NormChoice& norm);
double dual_norm(std::span<const double> x, const NormChoice& norm);

/// In-place prox of mu * ||.||.
void shrink_inplace(std::span<double> x, double mu, const NormChoice& norm);
std::vector<double> shrink_norm(std::span<const double> x, double mu,
                                const NormChoice& norm);
/// Prox of mu * (||.|| + eps * ||.||_2^2); nuclear with eps > 0 is rejected.
std::vector<double> shrink_regularized(std::span<const double> x, double mu,
                                       double eps, const NormChoice& norm);

namespace detail {
// Same as the public versions without the pairing/size validation; used by
// the per-pixel solver kernels after the configuration has been validated.
double norm_value_unchecked(std::span<const double> x, const NormChoice& norm);
double dual_norm_unchecked(std::span<const double> x, const NormChoice& norm);
void shrink_inplace_unchecked(std::span<double> x, double mu,
                              const NormChoice& norm);
}  // namespace detail

}  // namespace omt
