#include "doctest.h"

#include <random>

#include "omt/error.hpp"
#include "omt/spatial.hpp"

using namespace omt;

TEST_CASE("divergence examples") {
  const GridSpec grid(3);
  CHECK(norm2(div_x(FluxField(3, 1), grid)) == 0.0);

  FluxField u(3, 1);
  u.ux.at(0, 1, 1) = 1.0;
  const Field d = div_x(u, grid);
  CHECK(d.at(0, 1, 1) == doctest::Approx(2.0));
  CHECK(d.at(0, 2, 1) == doctest::Approx(-2.0));
  CHECK(std::abs(d.at(0, 0, 0)) == 0.0);

  u.uy.at(0, 0, 2) = 1.0;
  CHECK_THROWS_AS(div_x(u, grid), Error);
}

TEST_CASE("gradient examples") {
  const GridSpec grid(5);
  CHECK(norm2(grad_x(Field(5, 1, 3.0), grid).ux) == 0.0);

  Field phi(5, 1);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) phi.at(0, i, j) = 0.7 * grid.coord(i);
  const FluxField g = grad_x(phi, grid);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 5; ++j) CHECK(g.ux.at(0, i, j) == doctest::Approx(0.7));
  CHECK(g.ghosts_zero());
}

TEST_CASE("spatial adjointness") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int n : {2, 3, 7, 12}) {
    const GridSpec grid(n);
    for (int t = 0; t < 20; ++t) {
      Field phi(n, 2);
      FluxField f(n, 2);
      for (auto& v : phi.data()) v = u(rng);
      for (auto& v : f.ux.data()) v = u(rng);
      for (auto& v : f.uy.data()) v = u(rng);
      f.zero_ghosts();
      const FluxField g = grad_x(phi, grid);
      const double lhs = dot(g.ux, f.ux) + dot(g.uy, f.uy);
      const double rhs = -dot(phi, div_x(f, grid));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(lhs) + 1.0));
    }
  }
}

TEST_CASE("spectral bound") {
  CHECK(lambda_max_spatial_bound(GridSpec(2)) == doctest::Approx(8.0));
  CHECK(lambda_max_spatial_bound(GridSpec(33)) == doctest::Approx(8192.0));

  // Power iteration on -div grad.
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int n : {4, 8, 16}) {
    const GridSpec grid(n);
    Field x(n, 1);
    for (auto& v : x.data()) v = u(rng);
    double lambda = 0.0;
    for (int it = 0; it < 2000; ++it) {
      const double s = 1.0 / norm2(x);
      for (auto& v : x.data()) v *= s;
      Field y = div_x(grad_x(x, grid), grid);
      for (auto& v : y.data()) v = -v;
      lambda = dot(x, y);
      x = std::move(y);
    }
    CHECK(lambda <= lambda_max_spatial_bound(grid));
    CHECK(lambda > 0.5 * lambda_max_spatial_bound(grid));
  }
}
