#include "prox_oracle.hpp"

#include <cmath>
#include <random>

#include "omt/error.hpp"
#include "omt/hermitian.hpp"

namespace omt::testing {

namespace {

using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;

// Smooth objective over a flat parameter vector; returns f and fills grad.
struct Problem {
  virtual ~Problem() = default;
  virtual Eigen::Index size() const = 0;
  virtual double eval(const Vec& p, Vec& grad) const = 0;
};

// Groups of real coordinates; each group is reparametrized as a * w.
struct GroupProblem : Problem {
  std::vector<std::vector<int>> groups;
  Vec target;
  double mu = 0.0;
  double eps = 0.0;
  Eigen::Index dofs = 0;

  Eigen::Index size() const override { return dofs; }

  double eval(const Vec& p, Vec& grad) const override {
    grad.resize(dofs);
    double f = 0.0;
    Eigen::Index t = 0;
    for (const auto& g : groups) {
      const double a = p(t);
      double ga = mu * a;
      f += 0.5 * mu * a * a;
      for (std::size_t s = 0; s < g.size(); ++s) {
        const double w = p(t + 1 + s);
        const double z = a * w;
        const double r = z - target(g[s]);
        f += 0.5 * mu * w * w + 0.5 * r * r + mu * eps * z * z;
        ga += (r + 2.0 * mu * eps * z) * w;
        grad(t + 1 + s) = mu * w + (r + 2.0 * mu * eps * z) * a;
      }
      grad(t) = ga;
      t += 1 + static_cast<Eigen::Index>(g.size());
    }
    return f;
  }

  Vec value(const Vec& p) const {
    Vec z = Vec::Zero(target.size());
    Eigen::Index t = 0;
    for (const auto& g : groups) {
      for (std::size_t s = 0; s < g.size(); ++s) z(g[s]) = p(t) * p(t + 1 + s);
      t += 1 + static_cast<Eigen::Index>(g.size());
    }
    return z;
  }
};

// One complex k x k matrix per row, reparametrized as A B^*.
struct FactorProblem : Problem {
  std::vector<CMat> target;
  int k = 0;
  double mu = 0.0;

  Eigen::Index size() const override {
    return static_cast<Eigen::Index>(target.size()) * 4 * k * k;
  }

  void unpack(const Vec& p, std::size_t r, CMat& a, CMat& b) const {
    const Eigen::Index base = static_cast<Eigen::Index>(r) * 4 * k * k;
    a.resize(k, k);
    b.resize(k, k);
    for (int i = 0; i < k * k; ++i) {
      a(i / k, i % k) = {p(base + 2 * i), p(base + 2 * i + 1)};
      b(i / k, i % k) = {p(base + 2 * k * k + 2 * i),
                         p(base + 2 * k * k + 2 * i + 1)};
    }
  }

  double eval(const Vec& p, Vec& grad) const override {
    grad.resize(size());
    double f = 0.0;
    CMat a, b;
    for (std::size_t r = 0; r < target.size(); ++r) {
      unpack(p, r, a, b);
      const CMat res = a * b.adjoint() - target[r];
      f += 0.5 * mu * (a.squaredNorm() + b.squaredNorm()) + 0.5 * res.squaredNorm();
      const CMat ga = mu * a + res * b;
      const CMat gb = mu * b + res.adjoint() * a;
      const Eigen::Index base = static_cast<Eigen::Index>(r) * 4 * k * k;
      for (int i = 0; i < k * k; ++i) {
        grad(base + 2 * i) = ga(i / k, i % k).real();
        grad(base + 2 * i + 1) = ga(i / k, i % k).imag();
        grad(base + 2 * k * k + 2 * i) = gb(i / k, i % k).real();
        grad(base + 2 * k * k + 2 * i + 1) = gb(i / k, i % k).imag();
      }
    }
    return f;
  }
};

Vec bfgs(const Problem& pb, Vec z) {
  const Eigen::Index m = z.size();
  Vec g, g_new;
  double f = pb.eval(z, g);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(m, m);
  for (int it = 0; it < 20000 && g.lpNorm<Eigen::Infinity>() > 1e-15; ++it) {
    Vec dir = -h * g;
    if (dir.dot(g) >= 0.0) {
      h.setIdentity();
      dir = -g;
    }
    double t = 1.0, f_new = 0.0;
    Vec z_new;
    bool accepted = false;
    for (int bt = 0; bt < 60 && !accepted; ++bt) {
      z_new = z + t * dir;
      f_new = pb.eval(z_new, g_new);
      accepted = f_new <= f + 1e-4 * t * dir.dot(g);
      if (!accepted) t *= 0.5;
    }
    if (!accepted) break;  // flat to double precision
    const Vec s = z_new - z, y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-300) {
      if (it == 0) h *= sy / y.squaredNorm();
      const Vec hy = h * y;
      h += ((sy + y.dot(hy)) / (sy * sy)) * (s * s.transpose()) -
           (hy * s.transpose() + s * hy.transpose()) / sy;
    }
    z = std::move(z_new);
    g = std::move(g_new);
    f = f_new;
  }
  return z;
}

}  // namespace

std::vector<double> prox_oracle(std::span<const double> x, double mu,
                                const NormChoice& norm, double eps) {
  const PayloadShape& sh = norm.shape;
  const bool matrix = sh.is_matrix();
  const bool skew = sh.kind == EntryKind::SkewHermitian;
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss(0.0, 0.5);

  // Dense rows of the payload.
  std::vector<CMat> rows(sh.rows);
  for (int r = 0; r < sh.rows; ++r) {
    auto row = x.subspan(static_cast<std::size_t>(r) * sh.row_size, sh.row_size);
    if (matrix) {
      rows[r] = dense_from_coords(row, sh.dim, skew);
    } else {
      rows[r].resize(1, sh.row_size);
      for (int c = 0; c < sh.row_size; ++c) rows[r](0, c) = row[c];
    }
  }

  std::vector<CMat> result(sh.rows);
  if (norm.family == NormFamily::NuclearSum) {
    require(eps == 0.0, ErrorKind::InvalidArgument, "no regularized nuclear oracle");
    FactorProblem pb;
    pb.target = rows;
    pb.k = sh.dim;
    pb.mu = mu;
    Vec p(pb.size());
    for (auto& v : p) v = gauss(rng);
    p = bfgs(pb, p);
    CMat a, b;
    for (int r = 0; r < sh.rows; ++r) {
      pb.unpack(p, r, a, b);
      result[r] = a * b.adjoint();
    }
  } else {
    // Real coordinates of the dense entries: (re, im) per complex entry for
    // matrix rows, the plain values for real rows.
    const int per_entry = matrix ? 2 : 1;
    const int entries = static_cast<int>(rows[0].size());
    const int row_dofs = entries * per_entry;
    GroupProblem pb;
    pb.mu = mu;
    pb.eps = eps;
    pb.target.resize(static_cast<Eigen::Index>(sh.rows) * row_dofs);
    for (int r = 0; r < sh.rows; ++r)
      for (int e = 0; e < entries; ++e) {
        const auto v = rows[r](e / rows[r].cols(), e % rows[r].cols());
        pb.target(r * row_dofs + e * per_entry) = v.real();
        if (matrix) pb.target(r * row_dofs + e * per_entry + 1) = v.imag();
      }
    auto add_group = [&](int first, int count) {
      std::vector<int> g(count);
      for (int s = 0; s < count; ++s) g[s] = first + s;
      pb.groups.push_back(std::move(g));
      pb.dofs += 1 + count;
    };
    switch (norm.family) {
      case NormFamily::EuclideanAll:
        add_group(0, sh.rows * row_dofs);
        break;
      case NormFamily::GroupRows:
        for (int r = 0; r < sh.rows; ++r) add_group(r * row_dofs, row_dofs);
        break;
      default:
        for (int i = 0; i < sh.rows * entries; ++i)
          add_group(i * per_entry, per_entry);
        break;
    }
    Vec p(pb.size());
    for (auto& v : p) v = gauss(rng);
    const Vec z = pb.value(bfgs(pb, p));
    for (int r = 0; r < sh.rows; ++r) {
      result[r] = rows[r];
      for (int e = 0; e < entries; ++e) {
        const double re = z(r * row_dofs + e * per_entry);
        const double im = matrix ? z(r * row_dofs + e * per_entry + 1) : 0.0;
        result[r](e / rows[r].cols(), e % rows[r].cols()) = {re, im};
      }
    }
  }

  std::vector<double> out(x.size());
  for (int r = 0; r < sh.rows; ++r) {
    std::span<double> row(out.data() + static_cast<std::size_t>(r) * sh.row_size,
                          sh.row_size);
    if (matrix) {
      // The exact prox keeps the structure; symmetrizing only removes the
      // rounding-level asymmetry of the unstructured optimum.
      const CMat z = skew ? CMat(0.5 * (result[r] - result[r].adjoint()))
                          : CMat(0.5 * (result[r] + result[r].adjoint()));
      coords_from_dense(z, skew, row);
    } else {
      for (int c = 0; c < sh.row_size; ++c) row[c] = result[r](0, c).real();
    }
  }
  return out;
}

}  // namespace omt::testing
