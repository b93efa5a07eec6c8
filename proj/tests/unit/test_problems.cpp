#include "doctest.h"

#include "omt/error.hpp"
#include "omt/problems.hpp"

using namespace omt;

TEST_CASE("disk rasterization") {
  const auto all = gen_rgb_disks({{0.5, 0.5, 2.0, 0, 1.0}}, 6, 1);
  for (double v : all.values().data()) CHECK(v == doctest::Approx(1.0 / 36.0));

  const auto a = gen_rgb_disks(presets::rgb_source(), 32);
  const auto b = gen_rgb_disks(presets::rgb_source(), 32);
  CHECK(a.values() == b.values());
  CHECK(total_mass(a) == doctest::Approx(1.0));
  for (int c = 0; c < 3; ++c) {
    double m = 0.0;
    for (double v : a.values().plane(c)) m += v;
    CHECK(m == doctest::Approx(1.0 / 3.0));
  }
  // Rotating the colors moves each disk into the next channel.
  const auto t = gen_rgb_disks(presets::rgb_target(), 32);
  for (std::size_t p = 0; p < a.values().plane_size(); ++p) {
    CHECK(t.values().plane(1)[p] == doctest::Approx(a.values().plane(0)[p]).epsilon(1e-14));
    CHECK(t.values().plane(2)[p] == doctest::Approx(a.values().plane(1)[p]).epsilon(1e-14));
    CHECK(t.values().plane(0)[p] == doctest::Approx(a.values().plane(2)[p]).epsilon(1e-14));
  }

  CHECK_THROWS_AS(gen_rgb_disks({}, 8), Error);
  CHECK_THROWS_AS(gen_rgb_disks({{0.51, 0.51, 0.01, 0, 1.0}}, 8), Error);
  CHECK_THROWS_AS(gen_rgb_disks({{0.5, 0.5, 0.2, 3, 1.0}}, 8), Error);
}

TEST_CASE("matrix blobs") {
  const auto iso = gen_matrix_blobs({{0.5, 0.5, 0.3, HermitianMatrix::identity(3), 1.0}}, 16);
  CHECK(total_mass(iso) == doctest::Approx(1.0));
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      const CMatrix m = iso.at(i, j).dense();
      CHECK((m - m(0, 0) * CMatrix::Identity(3, 3)).norm() < 1e-15);
      CHECK(min_eigenvalue(iso.at(i, j)) >= 0.0);
    }

  // Colocated pair: same spatial profile, different tensors.
  const auto l0 = gen_matrix_blobs(presets::dti_lambda0(), 24);
  const auto l1 = gen_matrix_blobs(presets::dti_lambda1(), 24);
  const auto l2 = gen_matrix_blobs(presets::dti_lambda2(), 24);
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 24; ++j) {
      CHECK(l0.at(i, j).trace() == doctest::Approx(l1.at(i, j).trace()));
      CHECK(std::abs(l0.at(i, j)(0, 0) - l1.at(i, j)(1, 1)) < 1e-15);
    }
  // Translated pair: lambda2 is lambda0 moved by 0.4 in x (a whole number of
  // cells when 0.4 (n-1) is an integer).
  const auto s0 = gen_matrix_blobs(presets::dti_lambda0(), 26);
  const auto s2 = gen_matrix_blobs(presets::dti_lambda2(), 26);
  for (int i = 0; i + 10 < 26; ++i)
    for (int j = 0; j < 26; ++j)
      CHECK((s0.at(i, j).dense() - s2.at(i + 10, j).dense()).norm() < 1e-12);

  HermitianMatrix bad = HermitianMatrix::diagonal(std::vector{1.0, -0.5});
  CHECK_THROWS_AS(gen_matrix_blobs({{0.5, 0.5, 0.2, bad, 1.0}}, 8), Error);
}

TEST_CASE("gaussian bumps") {
  const auto one = gen_scalar_gaussians({{0.5, 0.5, 0.1}}, 21);
  CHECK(total_mass(one) == doctest::Approx(1.0));
  const Field& f = one.values();
  double best = -1.0;
  int bi = -1, bj = -1;
  for (int i = 0; i < 21; ++i)
    for (int j = 0; j < 21; ++j) {
      if (f.at(0, i, j) > best) {
        best = f.at(0, i, j);
        bi = i;
        bj = j;
      }
      CHECK(f.at(0, i, j) == doctest::Approx(f.at(0, 20 - i, j)));
      CHECK(f.at(0, i, j) == doctest::Approx(f.at(0, j, i)));
    }
  CHECK(bi == 10);
  CHECK(bj == 10);

  const auto two = gen_scalar_gaussians({{0.25, 0.5, 0.1}, {0.75, 0.5, 0.1}}, 21);
  for (int i = 0; i < 21; ++i)
    for (int j = 0; j < 21; ++j)
      CHECK(std::abs(two.values().at(0, i, j) - two.values().at(0, 20 - i, j)) <= 1e-12);
  CHECK_THROWS_AS(gen_scalar_gaussians({{0.5, 0.5, 0.0}}, 8), Error);
}

TEST_CASE("random fixtures") {
  CHECK(random_scalar_density(6, 1).values() == random_scalar_density(6, 1).values());
  CHECK_FALSE(random_scalar_density(6, 1).values() == random_scalar_density(6, 2).values());
  const auto m = random_matrix_density(5, 3, 7);
  CHECK(total_mass(m) == doctest::Approx(1.0));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(min_eigenvalue(m.at(i, j)) > 0.0);
}

TEST_CASE("dti step heuristics") {
  CHECK(presets::dti_tau(presets::DtiPair::Colocated01, 32, 0.1) == doctest::Approx(24.8));
  CHECK(presets::dti_tau(presets::DtiPair::Colocated01, 32, 10.0) == doctest::Approx(248.0));
  CHECK(presets::dti_tau(presets::DtiPair::Translated02, 32, 10.0) == 1.0);
}
