#include "omt/channel_operator.hpp"

#include <cmath>

#include "omt/error.hpp"

namespace omt {

double symmetric_lambda_max(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, ErrorKind::Numerical,
          "symmetric eigensolve failed");
  return std::max(0.0, es.eigenvalues().maxCoeff());
}

ChannelOperator::ChannelOperator(const Eigen::MatrixXd& g, double drop_tol)
    : rows_(static_cast<int>(g.rows())),
      cols_(static_cast<int>(g.cols())),
      dense_(g) {
  by_row_.start.assign(rows_ + 1, 0);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      if (std::abs(g(r, c)) > drop_tol) {
        by_row_.index.push_back(c);
        by_row_.value.push_back(g(r, c));
      }
    }
    by_row_.start[r + 1] = static_cast<int>(by_row_.index.size());
  }
  by_col_.start.assign(cols_ + 1, 0);
  for (int c = 0; c < cols_; ++c) {
    for (int r = 0; r < rows_; ++r) {
      if (std::abs(g(r, c)) > drop_tol) {
        by_col_.index.push_back(r);
        by_col_.value.push_back(g(r, c));
      }
    }
    by_col_.start[c + 1] = static_cast<int>(by_col_.index.size());
  }
  lambda_max_ = symmetric_lambda_max(g.transpose() * g);
}

void ChannelOperator::gradient(std::span<const double> x,
                               std::span<double> y) const {
  for (int r = 0; r < rows_; ++r) {
    double s = 0.0;
    for (int p = by_row_.start[r]; p < by_row_.start[r + 1]; ++p)
      s += by_row_.value[p] * x[by_row_.index[p]];
    y[r] = s;
  }
}

void ChannelOperator::add_divergence(std::span<const double> y, double scale,
                                     std::span<double> x) const {
  for (int c = 0; c < cols_; ++c) {
    double s = 0.0;
    for (int p = by_col_.start[c]; p < by_col_.start[c + 1]; ++p)
      s += by_col_.value[p] * y[by_col_.index[p]];
    x[c] -= scale * s;
  }
}

}  // namespace omt
