#include "omt/lindblad.hpp"

#include "omt/error.hpp"

namespace omt {

namespace {

int common_dim(std::span<const HermitianMatrix> ls) {
  require(!ls.empty(), ErrorKind::InvalidArgument,
          "Lindblad set must contain at least one matrix");
  const int k = ls.front().dim();
  for (const auto& l : ls) {
    require(l.dim() == k, ErrorKind::DimensionMismatch,
            "Lindblad matrices must share one dimension");
  }
  return k;
}

}  // namespace

std::vector<SkewHermitianMatrix> grad_L(std::span<const HermitianMatrix> ls,
                                        const HermitianMatrix& x) {
  const int k = common_dim(ls);
  require(x.dim() == k, ErrorKind::DimensionMismatch,
          "grad_L: dimension mismatch");
  const CMatrix xd = x.dense();
  std::vector<SkewHermitianMatrix> out;
  out.reserve(ls.size());
  for (const auto& l : ls) {
    const CMatrix ld = l.dense();
    out.push_back(SkewHermitianMatrix::from_dense(ld * xd - xd * ld, 1e-9));
  }
  return out;
}

HermitianMatrix div_L(std::span<const HermitianMatrix> ls,
                      std::span<const SkewHermitianMatrix> z) {
  const int k = common_dim(ls);
  require(z.size() == ls.size(), ErrorKind::DimensionMismatch,
          "div_L: need one component per Lindblad matrix");
  CMatrix acc = CMatrix::Zero(k, k);
  for (std::size_t s = 0; s < ls.size(); ++s) {
    require(z[s].dim() == k, ErrorKind::DimensionMismatch,
            "div_L: dimension mismatch");
    const CMatrix ld = ls[s].dense();
    const CMatrix zd = z[s].dense();
    acc += zd * ld - ld * zd;
  }
  return HermitianMatrix::from_dense(acc, 1e-9);
}

Eigen::MatrixXd lindblad_gradient_matrix(std::span<const HermitianMatrix> ls) {
  const int k = common_dim(ls);
  const int dim = k * k;
  const int ell = static_cast<int>(ls.size());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(ell * dim, dim);
  std::vector<double> basis(dim, 0.0);
  std::vector<double> col(dim);
  for (int p = 0; p < dim; ++p) {
    basis.assign(dim, 0.0);
    basis[p] = 1.0;
    const auto comps = grad_L(ls, HermitianMatrix::from_coords(basis, k));
    for (int s = 0; s < ell; ++s) {
      comps[s].to_coords(col);
      for (int q = 0; q < dim; ++q) g(s * dim + q, p) = col[q];
    }
  }
  return g;
}

Eigen::MatrixXd lindblad_neg_laplacian(std::span<const HermitianMatrix> ls) {
  const Eigen::MatrixXd g = lindblad_gradient_matrix(ls);
  return g.transpose() * g;
}

double lambda_max_L(std::span<const HermitianMatrix> ls) {
  return symmetric_lambda_max(lindblad_neg_laplacian(ls));
}

bool check_kernel(std::span<const HermitianMatrix> ls) {
  const Eigen::MatrixXd a = lindblad_neg_laplacian(ls);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, ErrorKind::Numerical,
          "eigensolve failed in check_kernel");
  const double top = es.eigenvalues().maxCoeff();
  if (top <= 0.0) return false;
  int zeros = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) < 1e-10 * top) ++zeros;
  return zeros == 1;
}

LindbladSet::LindbladSet(std::vector<HermitianMatrix> matrices)
    : ls_(std::move(matrices)), k_(common_dim(ls_)) {
  require(check_kernel(ls_), ErrorKind::InvalidArgument,
          "Lindblad set violates the kernel condition: ker(grad_L) is larger "
          "than span{I}");
}

LindbladSet LindbladSet::dti_pair() {
  HermitianMatrix l1 = HermitianMatrix::diagonal(std::vector{1.0, 2.0, 0.0});
  HermitianMatrix l2(3);
  l2.set(0, 0, 1.0);
  l2.set(0, 1, 1.0);
  l2.set(0, 2, 1.0);
  return LindbladSet({l1, l2});
}

ChannelOperator lindblad_channel_operator(const LindbladSet& set) {
  return ChannelOperator(lindblad_gradient_matrix(set.matrices()), 1e-14);
}

}  // namespace omt
