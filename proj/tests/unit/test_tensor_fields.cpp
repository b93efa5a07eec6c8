#include "doctest.h"

#include <random>

#include "omt/error.hpp"
#include "omt/field.hpp"
#include "omt/hermitian.hpp"

using namespace omt;

namespace {

CMatrix random_hermitian(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) a(i, j) = {g(rng), g(rng)};
  return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST_CASE("hs_inner examples") {
  CHECK(hs_inner(HermitianMatrix::identity(2), HermitianMatrix::identity(2)) ==
        doctest::Approx(2.0));
  const auto d1 = HermitianMatrix::diagonal(std::vector{1.0, -1.0});
  const auto d2 = HermitianMatrix::diagonal(std::vector{1.0, 1.0});
  CHECK(hs_inner(d1, d2) == doctest::Approx(0.0));

  SkewHermitianMatrix x(2);
  x.set(0, 1, Complex(0, 1));
  CHECK(x(1, 0) == Complex(0, 1));
  CHECK(hs_inner(x, x) == doctest::Approx(2.0));
}

TEST_CASE("coordinates are an isometry and round-trip") {
  std::mt19937_64 rng(3);
  for (int k = 1; k <= 4; ++k) {
    for (int trial = 0; trial < 20; ++trial) {
      const CMatrix a = random_hermitian(k, rng);
      const CMatrix b = random_hermitian(k, rng);
      std::vector<double> ca(k * k), cb(k * k);
      coords_from_dense(a, false, ca);
      coords_from_dense(b, false, cb);
      double dot = 0.0;
      for (int p = 0; p < k * k; ++p) dot += ca[p] * cb[p];
      CHECK(dot == doctest::Approx(hs_inner(a, b)).epsilon(1e-12));
      CHECK((dense_from_coords(ca, k, false) - a).norm() < 1e-12);

      const CMatrix z = Complex(0, 1) * a;  // skew-Hermitian
      std::vector<double> cz(k * k);
      coords_from_dense(z, true, cz);
      CHECK((dense_from_coords(cz, k, true) - z).norm() < 1e-12);
      const auto s = SkewHermitianMatrix::from_coords(cz, k);
      CHECK((s.dense() - z).norm() < 1e-12);
    }
  }
}

TEST_CASE("hermitian storage enforces the structure") {
  HermitianMatrix m(3);
  m.set(0, 2, Complex(1, 2));
  m.set(1, 1, Complex(4, 7));
  CHECK(m(2, 0) == Complex(1, -2));
  CHECK(m(1, 1) == Complex(4, 0));
  CHECK(m.trace() == doctest::Approx(4.0));

  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianMatrix::from_dense(bad), Error);
  CHECK_THROWS_AS(HermitianMatrix::from_dense(CMatrix::Zero(2, 3)), Error);
}

TEST_CASE("total mass") {
  Field uniform(4, 1, 1.0 / 16.0);
  CHECK(total_mass(ScalarDensity::from_field(uniform)) == doctest::Approx(1.0));
  CHECK(total_mass(Field(3, 2, 0.0)) == 0.0);

  std::vector<HermitianMatrix> pixels(4, HermitianMatrix(3));
  pixels[2] = (1.0 / 3.0) * HermitianMatrix::identity(3);
  const auto d = MatrixDensity::from_coords(matrix_field(2, 3, pixels), 3);
  CHECK(total_mass(d) == doctest::Approx(1.0));
}

TEST_CASE("normalize") {
  const auto d = ScalarDensity::normalized(Field(2, 1, 1.0));
  for (double v : d.values().data()) CHECK(v == doctest::Approx(0.25));

  const auto again = normalize(d);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(std::abs(again.values().data()[i] - d.values().data()[i]) <= 1e-15);

  std::vector<HermitianMatrix> pixels(4, HermitianMatrix(3));
  pixels[1] = 2.0 * HermitianMatrix::identity(3);
  const auto m = MatrixDensity::normalized(matrix_field(2, 3, pixels), 3);
  const CMatrix expect = CMatrix::Identity(3, 3) / 3.0;
  CHECK((m.at(0, 1).dense() - expect).norm() < 1e-15);

  CHECK_THROWS_AS(ScalarDensity::normalized(Field(2, 1, 0.0)), Error);
}

TEST_CASE("density validation") {
  Field f(2, 1, 0.25);
  f.at(0, 0, 0) = -0.25;
  f.at(0, 1, 1) = 0.75;
  CHECK_THROWS_AS(ScalarDensity::from_field(f), Error);
  CHECK_THROWS_AS(ScalarDensity::from_field(Field(2, 1, 0.3)), Error);

  // Unit trace but not PSD.
  std::vector<HermitianMatrix> pixels(4, HermitianMatrix(2));
  pixels[0] = HermitianMatrix::diagonal(std::vector{1.5, -0.5});
  CHECK_THROWS_AS(MatrixDensity::from_coords(matrix_field(2, 2, pixels), 2), Error);
}

TEST_CASE("flux ghosts") {
  FluxField u(3, 2);
  CHECK(u.ghosts_zero());
  u.ux.at(1, 2, 0) = 1.0;
  CHECK_FALSE(u.ghosts_zero());
  u.zero_ghosts();
  CHECK(u.ghosts_zero());
}
