#include "doctest.h"

#include "ssns/ambient.hpp"
#include "ssns/fields.hpp"
#include "ssns/force_library.hpp"
#include "ssns/grid.hpp"

#include <cmath>

using namespace ssns;

TEST_CASE("family catalogue and profile closed forms") {
  auto g = build_grid(5, 24);

  const auto& families = force_families();
  CHECK(families.size() >= 4);

  auto fc = make_force("radial-constant", 1.0, g, /*require_nonneg=*/true);
  CHECK((fc.f_r.array() - 1.0).abs().maxCoeff() == 0.0);
  CHECK(fc.f_theta.lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(fc.radial_nonneg);

  auto fcos = make_force("radial-cosine", 0.7, g, true);
  CHECK((fcos.f_r - 0.7 * (1.0 + g->x.array()).matrix()).lpNorm<Eigen::Infinity>() < 1e-15);
  CHECK(fcos.f_r.minCoeff() >= 0.0);
  CHECK(fcos.radial_nonneg);

  auto fpar = make_force("radial-parabolic", 2.0, g, true);
  CHECK((fpar.f_r - 2.0 * (1.0 - g->x.array().square()).matrix()).lpNorm<Eigen::Infinity>() <
        1e-15);

  auto fm = make_force("mixed", 1.0, g);
  CHECK((fm.f_r - g->x).lpNorm<Eigen::Infinity>() < 1e-15);
  CHECK((fm.f_theta - g->sin_theta).lpNorm<Eigen::Infinity>() < 1e-15);
  CHECK_FALSE(fm.radial_nonneg);

  CHECK_THROWS(make_force("no-such-family", 1.0, g));
  // requesting the nonnegative-radial guarantee on a sign-changing family
  CHECK_THROWS(make_force("mixed", 1.0, g, true));
  // ... or on a nonnegative family at negative amplitude
  CHECK_THROWS(make_force("radial-cosine", -1.0, g, true));

  // the (e_n, sigma) split reassembles the stored profiles
  for (const auto& f : {fc, fcos, fpar, fm}) {
    CHECK((f.phi_radial + g->x.cwiseProduct(f.phi_axis) - f.f_r).lpNorm<Eigen::Infinity>() <
          1e-14);
    CHECK((f.f_theta + f.phi_axis.cwiseProduct(g->sin_theta)).lpNorm<Eigen::Infinity>() < 1e-14);
  }
}

TEST_CASE("analytic divergence agrees with the spectral route") {
  for (int n : {4, 5, 8}) {
    auto g = build_grid(n, 24);
    for (const char* name : {"radial-constant", "radial-cosine", "radial-parabolic", "mixed"}) {
      auto f = make_force(name, 0.8, g);
      REQUIRE(f.has_analytic_div);
      auto div = analytic_div(f);  // throws internally if the routes disagree
      Eigen::VectorXd spectral = force_divergence_profile(f);
      // force_divergence_profile prefers the analytic profile; recompute the
      // spectral route directly for an independent comparison
      Eigen::VectorXd phi_a_prime = g->d1 * f.phi_axis;
      Eigen::VectorXd direct = ((1.0 - g->x.array().square()) * phi_a_prime.array() -
                                3.0 * g->x.array() * f.phi_axis.array() +
                                (n - 4.0) * f.phi_radial.array())
                                   .matrix();
      const double scale = 1.0 + direct.lpNorm<Eigen::Infinity>();
      CHECK((div.values - direct).lpNorm<Eigen::Infinity>() / scale < 1e-10);
      CHECK((spectral - div.values).lpNorm<Eigen::Infinity>() / scale < 1e-10);
    }

    // zero amplitude: zero divergence
    auto f0 = make_force("radial-cosine", 0.0, g);
    CHECK(analytic_div(f0).values.lpNorm<Eigen::Infinity>() == 0.0);

    // amplitude linearity
    auto f1 = make_force("mixed", 1.0, g);
    auto f3 = make_force("mixed", 3.0, g);
    CHECK((analytic_div(f3).values - 3.0 * analytic_div(f1).values).lpNorm<Eigen::Infinity>() <
          1e-13);
  }
}

TEST_CASE("scaled copies and ambient homogeneity") {
  auto g = build_grid(5, 24);
  auto f = make_force("mixed", 0.4, g);

  auto f2 = f.scaled(2.5);
  CHECK(f2.amplitude == doctest::Approx(1.0).epsilon(1e-15));
  CHECK((f2.f_r - 2.5 * f.f_r).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((f2.f_theta - 2.5 * f.f_theta).lpNorm<Eigen::Infinity>() == 0.0);

  // reconstructed force is (-3)-homogeneous: f(2 sigma) = f(sigma)/8
  Eigen::VectorXd pt(5);
  pt << 0.3, -0.2, 0.1, 0.4, 0.8;
  pt.normalize();
  Eigen::VectorXd at1 = ambient::force_at(f, pt);
  Eigen::VectorXd at2 = ambient::force_at(f, 2.0 * pt);
  CHECK((at2 - at1 / 8.0).lpNorm<Eigen::Infinity>() < 1e-14);
  Eigen::VectorXd athalf = ambient::force_at(f, 0.5 * pt);
  CHECK((athalf - 8.0 * at1).lpNorm<Eigen::Infinity>() < 1e-12);
}
