#include "ssns/grid.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace ssns;

TEST_CASE("sphere areas, ball volumes, and their ratio") {
  const double pi = M_PI;
  CHECK(sphere_area(1) == doctest::Approx(2 * pi).epsilon(1e-14));
  CHECK(sphere_area(2) == doctest::Approx(4 * pi).epsilon(1e-14));
  CHECK(sphere_area(3) == doctest::Approx(2 * pi * pi).epsilon(1e-14));
  CHECK(sphere_area(4) == doctest::Approx(8 * pi * pi / 3).epsilon(1e-14));
  CHECK(ball_volume(4) == doctest::Approx(pi * pi / 2).epsilon(1e-14));
  for (int n = 4; n <= 20; ++n)
    CHECK(sphere_area(n - 1) == doctest::Approx(n * ball_volume(n)).epsilon(1e-13));
}

TEST_CASE("quadrature integrates low moments exactly") {
  for (int n : {4, 5, 8, 16}) {
    CAPTURE(n);
    GridPtr g = build_grid(n, 16);
    const double area = sphere_area(n - 1);
    CHECK(g->integrate(Eigen::VectorXd::Ones(g->size)) == doctest::Approx(area).epsilon(1e-13));
    CHECK(std::abs(g->integrate(g->x)) < 1e-14 * area);
    CHECK(g->integrate(g->x.cwiseProduct(g->x)) == doctest::Approx(area / n).epsilon(1e-13));
    const Eigen::VectorXd x4 = g->x.array().pow(4).matrix();
    CHECK(g->integrate(x4) == doctest::Approx(3.0 * area / (n * (n + 2.0))).epsilon(1e-13));
  }
}

TEST_CASE("quadrature matches an adaptive Simpson oracle on a non-polynomial") {
  const int n = 6;
  GridPtr g = build_grid(n, 24);
  const Eigen::VectorXd vals = g->x.array().exp().matrix();
  const double byquad = g->integrate(vals);
  const double p = 0.5 * (n - 3);
  const double byoracle =
      g->sphere_prefactor * ssns_test::adaptive_simpson(
                                [p](double t) { return std::exp(t) * std::pow(1.0 - t * t, p); },
                                -1.0, 1.0, 1e-12);
  CHECK(byquad == doctest::Approx(byoracle).epsilon(1e-11));
}

TEST_CASE("differentiation matrices are exact on polynomials") {
  GridPtr g = build_grid(5, 20);
  const Eigen::ArrayXd x = g->x.array();
  const Eigen::VectorXd p = (x.pow(3) - 2.0 * x + 1.0).matrix();
  const Eigen::VectorXd dp_exact = (3.0 * x.square() - 2.0).matrix();
  const Eigen::VectorXd d2p_exact = (6.0 * x).matrix();
  CHECK(((g->d1 * p - dp_exact).lpNorm<Eigen::Infinity>()) < 1e-11);
  CHECK(((g->d2 * p - d2p_exact).lpNorm<Eigen::Infinity>()) < 1e-10);
}

TEST_CASE("interpolation reproduces smooth functions off the nodes") {
  GridPtr g = build_grid(5, 32);
  const Eigen::VectorXd vals = (3.0 * g->x).array().cos().matrix();
  for (double t : {-0.83, -0.21, 0.0, 0.37, 0.92})
    CHECK(g->interpolate(vals, t) == doctest::Approx(std::cos(3.0 * t)).epsilon(1e-12));
  // reproduces nodal values exactly
  CHECK(g->interpolate(vals, g->x(5)) == doctest::Approx(vals(5)).epsilon(1e-15));
}

TEST_CASE("grid ordering and positivity") {
  GridPtr g = build_grid(8, 16);
  for (int k = 0; k + 1 < g->size; ++k) {
    CHECK(g->theta(k) < g->theta(k + 1));
    CHECK(g->x(k) > g->x(k + 1));
  }
  CHECK(g->weights.minCoeff() > 0.0);
  CHECK(g->sin_theta.minCoeff() > 0.0);
}

TEST_CASE("checksums identify the discretization") {
  GridPtr a = build_grid(5, 24);
  GridPtr b = build_grid(5, 24);
  GridPtr c = build_grid(5, 32);
  GridPtr d = build_grid(6, 24);
  CHECK(a->checksum_hex() == b->checksum_hex());
  CHECK(a->checksum_hex() != c->checksum_hex());
  CHECK(a->checksum_hex() != d->checksum_hex());
  CHECK(a->checksum_hex().size() == 16);
}

TEST_CASE("constructor guards") {
  CHECK_THROWS_AS((void)build_grid(3, 16), std::invalid_argument);
  CHECK_THROWS_AS((void)build_grid(5, 4), std::invalid_argument);
}

TEST_CASE("raw quadrature rules") {
  Eigen::VectorXd t, w;
  gauss_jacobi(12, 1.0, 1.0, t, w);
  CHECK(w.sum() == doctest::Approx(4.0 / 3.0).epsilon(1e-14));  // integral of (1-x^2)
  gauss_legendre(8, 0.0, 1.0, t, w);
  CHECK(w.dot(t.array().pow(3).matrix()) == doctest::Approx(0.25).epsilon(1e-14));
}
