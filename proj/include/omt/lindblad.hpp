#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "omt/channel_operator.hpp"
#include "omt/hermitian.hpp"

namespace omt {

/// Commutator gradient X -> [L_s X - X L_s]_s on Hermitian matrices.
std::vector<SkewHermitianMatrix> grad_L(std::span<const HermitianMatrix> ls,
                                        const HermitianMatrix& x);
/// Divergence Z -> sum_s (-L_s Z_s + Z_s L_s), the negative adjoint of grad_L.
HermitianMatrix div_L(std::span<const HermitianMatrix> ls,
                      std::span<const SkewHermitianMatrix> z);

/// Real (l k^2) x k^2 matrix of grad_L in the orthonormal coordinates of
/// hermitian.hpp; column p is grad_L applied to basis element p.
Eigen::MatrixXd lindblad_gradient_matrix(std::span<const HermitianMatrix> ls);
/// Dense k^2 x k^2 matrix of -Laplacian = grad_L^* grad_L.
Eigen::MatrixXd lindblad_neg_laplacian(std::span<const HermitianMatrix> ls);
double lambda_max_L(std::span<const HermitianMatrix> ls);
/// True iff the kernel of grad_L is exactly span{I}: exactly one eigenvalue
/// of -Laplacian lies below 1e-10 * lambda_max.
bool check_kernel(std::span<const HermitianMatrix> ls);

/// Validated set of Lindblad matrices (all k x k, kernel condition holds).
class LindbladSet {
 public:
  /// Throws InvalidArgument when dimensions disagree or the kernel of the
  /// induced gradient is larger than span{I}.
  explicit LindbladSet(std::vector<HermitianMatrix> matrices);

  /// The pair used for the diffusion-tensor experiments (k = 3, l = 2).
  static LindbladSet dti_pair();

  int dim() const { return k_; }
  int size() const { return static_cast<int>(ls_.size()); }
  std::span<const HermitianMatrix> matrices() const { return ls_; }

 private:
  std::vector<HermitianMatrix> ls_;
  int k_;
};

ChannelOperator lindblad_channel_operator(const LindbladSet& set);

}  // namespace omt
