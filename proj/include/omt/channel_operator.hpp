#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace omt {

/// Per-pixel linear "channel gradient" G: R^P -> R^Q in orthonormal
/// coordinates, with divergence -G^T. Both the graph gradient and the
/// Lindblad gradient are realized this way so the solver kernels can treat
/// vector and matrix transport identically. Stored sparse in both
/// orientations; the realizations of interest have few nonzeros.
class ChannelOperator {
 public:
  ChannelOperator() = default;
  explicit ChannelOperator(const Eigen::MatrixXd& g, double drop_tol = 0.0);

  int in_size() const { return cols_; }
  int out_size() const { return rows_; }

  /// y = G x
  void gradient(std::span<const double> x, std::span<double> y) const;
  /// x += scale * (-G^T y), i.e. accumulates scale * div(y).
  void add_divergence(std::span<const double> y, double scale,
                      std::span<double> x) const;

  /// Largest eigenvalue of -Laplacian = G^T G.
  double lambda_max() const { return lambda_max_; }
  const Eigen::MatrixXd& dense() const { return dense_; }

 private:
  struct Csr {
    std::vector<int> start;
    std::vector<int> index;
    std::vector<double> value;
  };

  int rows_ = 0;
  int cols_ = 0;
  Csr by_row_;
  Csr by_col_;
  Eigen::MatrixXd dense_;
  double lambda_max_ = 0.0;
};

/// Largest eigenvalue of a symmetric positive semidefinite matrix.
double symmetric_lambda_max(const Eigen::MatrixXd& m);

}  // namespace omt
