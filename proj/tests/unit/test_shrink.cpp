#include "doctest.h"

#include <random>

#include "omt/error.hpp"
#include "omt/shrink.hpp"
#include "prox_oracle.hpp"

using namespace omt;

namespace {

std::vector<NormChoice> all_pairings() {
  std::vector<NormChoice> out;
  for (auto f : {NormFamily::EuclideanAll, NormFamily::GroupRows,
                 NormFamily::ElementwiseL1}) {
    out.push_back({f, PayloadShape::real(2, 3)});
    out.push_back({f, PayloadShape::real(1, 4)});
  }
  for (auto f : {NormFamily::EuclideanAll, NormFamily::GroupRows,
                 NormFamily::ElementwiseL1, NormFamily::NuclearSum}) {
    out.push_back({f, PayloadShape::hermitian(2, 2)});
    out.push_back({f, PayloadShape::skew(2, 3)});
  }
  return out;
}

std::vector<double> random_payload(const PayloadShape& s, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> x(s.size());
  for (auto& v : x) v = g(rng);
  return x;
}

double max_diff(std::span<const double> a, std::span<const double> b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

}  // namespace

TEST_CASE("scalar shrink examples") {
  CHECK(shrink1(2.0, 0.5) == doctest::Approx(1.5));
  CHECK(shrink1(0.3, 1.0) == 0.0);
  const Complex z = shrink1(Complex(0, 3), 1.0);
  CHECK(z.real() == doctest::Approx(0.0));
  CHECK(z.imag() == doctest::Approx(2.0));
}

TEST_CASE("block shrink examples") {
  const Eigen::VectorXd a = shrink2(Eigen::VectorXd(Eigen::Vector2d(3, 4)), 1.0);
  CHECK(a(0) == doctest::Approx(2.4));
  CHECK(a(1) == doctest::Approx(3.2));
  CHECK(shrink2(Eigen::VectorXd(Eigen::Vector2d(0.1, 0.1)), 1.0).norm() == 0.0);
}

TEST_CASE("nuclear shrink examples") {
  const auto a = shrink_nuc(HermitianMatrix::diagonal(std::vector{3.0, 1.0}), 2.0);
  CHECK((a.dense() - CMatrix(Eigen::Vector2cd(1, 0).asDiagonal())).norm() < 1e-14);
  const auto b = shrink_nuc(HermitianMatrix::diagonal(std::vector{-3.0, 1.0}), 2.0);
  CHECK((b.dense() - CMatrix(Eigen::Vector2cd(-1, 0).asDiagonal())).norm() < 1e-14);

  // The eigen route agrees with the general SVD route.
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    HermitianMatrix h(3);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) h.set(i, j, Complex(g(rng), i == j ? 0 : g(rng)));
    const double mu = 0.5 + std::abs(g(rng));
    CHECK((shrink_nuc(h, mu).dense() - shrink_nuc(h.dense(), mu)).norm() < 1e-12);
  }
}

TEST_CASE("payload shrink examples") {
  const NormChoice rows{NormFamily::GroupRows, PayloadShape::real(2, 2)};
  const auto y = shrink_norm(std::vector{3.0, 4.0, 0.1, 0.0}, 1.0, rows);
  CHECK(y[0] == doctest::Approx(2.4));
  CHECK(y[1] == doctest::Approx(3.2));
  CHECK(y[2] == 0.0);
  CHECK(y[3] == 0.0);

  const std::vector x{3.0, 4.0};
  const NormChoice l2{NormFamily::EuclideanAll, PayloadShape::real(1, 2)};
  CHECK(shrink_regularized(x, 1.0, 0.0, l2) == shrink_norm(x, 1.0, l2));
  const auto r = shrink_regularized(x, 1.0, 0.5, l2);
  CHECK(r[0] == doctest::Approx(1.2));
  CHECK(r[1] == doctest::Approx(1.6));

  const NormChoice nuc{NormFamily::NuclearSum, PayloadShape::hermitian(1, 2)};
  CHECK_THROWS_AS(shrink_regularized(std::vector{1.0, 0.0, 0.0, 0.0}, 1.0, 0.1, nuc),
                  Error);
}

TEST_CASE("dual norms") {
  CHECK(dual_norm(std::vector{1.0, -3.0, 2.0},
                  {NormFamily::ElementwiseL1, PayloadShape::real(1, 3)}) ==
        doctest::Approx(3.0));
  CHECK(dual_norm(std::vector{3.0, 4.0, 1.0, 0.0},
                  {NormFamily::GroupRows, PayloadShape::real(2, 2)}) ==
        doctest::Approx(5.0));
  CHECK(dual_norm(HermitianMatrix::diagonal(std::vector{2.0, -5.0}).coords(),
                  {NormFamily::NuclearSum, PayloadShape::hermitian(1, 2)}) ==
        doctest::Approx(5.0));
}

TEST_CASE("pairing validation") {
  CHECK_FALSE(valid_pairing(NormFamily::NuclearSum, PayloadShape::real(2, 3)));
  CHECK(valid_pairing(NormFamily::NuclearSum, PayloadShape::skew(2, 3)));
  CHECK_THROWS_AS(shrink_norm(std::vector{1.0, 2.0}, 1.0,
                              {NormFamily::NuclearSum, PayloadShape::real(1, 2)}),
                  Error);
  CHECK_THROWS_AS(shrink_norm(std::vector{1.0}, 1.0,
                              {NormFamily::GroupRows, PayloadShape::real(1, 2)}),
                  Error);
  CHECK(parse_norm_family("l12") == NormFamily::GroupRows);
  CHECK(norm_family_name(NormFamily::NuclearSum) == "l1nuc");
  CHECK_THROWS_AS(parse_norm_family("l3"), Error);
}

TEST_CASE("every family matches the brute-force oracle") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> mu_dist(0.1, 2.0);
  for (const auto& nc : all_pairings()) {
    for (int t = 0; t < 3; ++t) {
      const auto x = random_payload(nc.shape, rng);
      const double mu = mu_dist(rng);
      CHECK(max_diff(shrink_norm(x, mu, nc), testing::prox_oracle(x, mu, nc)) <= 1e-6);
      if (nc.family != NormFamily::NuclearSum) {
        CHECK(max_diff(shrink_regularized(x, mu, 0.3, nc),
                       testing::prox_oracle(x, mu, nc, 0.3)) <= 1e-6);
      }
    }
  }
}

TEST_CASE("prox optimality certificate") {
  // z = prox(x) iff (x - z)/mu lies in the subdifferential of the norm at z:
  // dual norm <= 1 and <(x - z)/mu, z> = ||z||.
  std::mt19937_64 rng(22);
  for (const auto& nc : all_pairings()) {
    for (int t = 0; t < 20; ++t) {
      const auto x = random_payload(nc.shape, rng);
      const double mu = 0.8;
      const auto z = shrink_norm(x, mu, nc);
      std::vector<double> g(x.size());
      double inner = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        g[i] = (x[i] - z[i]) / mu;
        inner += g[i] * z[i];
      }
      CHECK(dual_norm(g, nc) <= 1.0 + 1e-12);
      CHECK(inner == doctest::Approx(norm_value(z, nc)).epsilon(1e-10));
    }
  }
}

TEST_CASE("prox is firmly nonexpansive") {
  std::mt19937_64 rng(23);
  for (const auto& nc : all_pairings()) {
    for (int t = 0; t < 20; ++t) {
      const auto x = random_payload(nc.shape, rng);
      const auto y = random_payload(nc.shape, rng);
      const auto px = shrink_norm(x, 0.7, nc);
      const auto py = shrink_norm(y, 0.7, nc);
      double lhs = 0.0, rhs = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        lhs += (px[i] - py[i]) * (px[i] - py[i]);
        rhs += (px[i] - py[i]) * (x[i] - y[i]);
      }
      CHECK(lhs <= rhs + 1e-12);
    }
  }
}

TEST_CASE("nuclear shrink keeps the structure") {
  std::mt19937_64 rng(24);
  std::normal_distribution<double> g;
  for (int k = 1; k <= 4; ++k) {
    for (int t = 0; t < 20; ++t) {
      CMatrix a(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) a(i, j) = {g(rng), g(rng)};
      const CMatrix h = 0.5 * (a + a.adjoint());
      const CMatrix s = 0.5 * (a - a.adjoint());
      const CMatrix ph = shrink_nuc(h, 0.6);
      const CMatrix ps = shrink_nuc(s, 0.6);
      CHECK((ph - ph.adjoint()).norm() <= 1e-12);
      CHECK((ps + ps.adjoint()).norm() <= 1e-12);
      CHECK((shrink_nuc(HermitianMatrix::from_dense(h), 0.6).dense() - ph).norm() <= 1e-12);
      CHECK((shrink_nuc(SkewHermitianMatrix::from_dense(s), 0.6).dense() - ps).norm() <= 1e-12);
    }
  }
}
