#include "doctest.h"

#include "ssns/toy_model.hpp"

#include <cmath>

using namespace ssns;

TEST_CASE("closed-form branches and multiplicities") {
  auto b0 = exact_branches(0.0);
  REQUIRE(b0.roots.size() == 2);
  CHECK(b0.roots[0] == 0.0);
  CHECK(b0.roots[1] == -2.0);
  CHECK(b0.multiplicity == ToyMultiplicity::Two);

  auto b1 = exact_branches(1.0);
  REQUIRE(b1.roots.size() == 1);
  CHECK(b1.roots[0] == -1.0);
  CHECK(b1.multiplicity == ToyMultiplicity::One);

  auto b2 = exact_branches(2.0);
  CHECK(b2.roots.empty());
  CHECK(b2.multiplicity == ToyMultiplicity::None);

  auto b = exact_branches(0.75);
  REQUIRE(b.roots.size() == 2);
  CHECK(b.roots[0] == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(b.roots[1] == doctest::Approx(-1.5).epsilon(1e-10));

  // every root satisfies the quadratic; roots are symmetric about -1
  for (double c : {-2.0, 0.0, 0.3, 0.75, 0.999, 1.0}) {
    auto br = exact_branches(c);
    for (double root : br.roots) CHECK(std::abs(residual_check(root, c)) < 1e-12);
    if (br.roots.size() == 2)
      CHECK(br.roots[0] + br.roots[1] == doctest::Approx(-2.0).epsilon(1e-13));
  }
}

TEST_CASE("residual closed form") {
  CHECK(residual_check(-2.0, 0.0) == 0.0);
  CHECK(residual_check(-1.0, 1.0) == 0.0);
  CHECK(residual_check(0.0, 1.0) == -1.0);
  CHECK(residual_check(3.0, 0.5) == -15.5);
}

TEST_CASE("nonexistence floor and Newton probes above the fold") {
  CHECK(nonexistence_floor(0.5) == 0.0);
  CHECK(nonexistence_floor(1.0) == 0.0);
  CHECK(nonexistence_floor(1.5) == doctest::Approx(0.5).epsilon(1e-14));

  // below the fold Newton converges onto a true root
  auto ok = toy_newton_probe(0.75, 0.0);
  CHECK(ok.converged);
  CHECK(ok.C == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(std::abs(ok.residual) < 1e-12);

  // above the fold the residual stalls at (or above) the floor
  for (double c : {1.2, 1.5}) {
    auto probe = toy_newton_probe(c, -1.0);
    CHECK_FALSE(probe.converged);
    CHECK(probe.residual >= nonexistence_floor(c) - 1e-12);
    CHECK(nonexistence_floor(c) > 0.1);
  }
}

TEST_CASE("pseudo-arclength continuation traces both branches through the fold") {
  auto diagram = fold_continuation(0.0, 0.0, 220);
  REQUIRE(diagram.fold_found);
  CHECK_FALSE(diagram.stalled);
  CHECK(diagram.fold_c == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(diagram.fold_C == doctest::Approx(-1.0).epsilon(1e-6));

  // every traced point lies on the exact branch set
  bool saw_upper = false, saw_lower = false;
  for (const auto& pt : diagram.points) {
    CHECK(pt.c <= 1.0 + 1e-9);
    CHECK(std::abs(residual_check(pt.C, pt.c)) < 1e-8);
    const double expect = pt.branch_id == 0 ? -1.0 + std::sqrt(std::max(0.0, 1.0 - pt.c))
                                            : -1.0 - std::sqrt(std::max(0.0, 1.0 - pt.c));
    CHECK(pt.C == doctest::Approx(expect).epsilon(1e-7));
    saw_upper |= pt.branch_id == 0;
    saw_lower |= pt.branch_id == 1;
  }
  CHECK(saw_upper);
  CHECK(saw_lower);
}

TEST_CASE("finite-domain BVP converges to the closed-form root as the grid refines") {
  const double c = 0.75;
  const double target = -1.0 + std::sqrt(1.0 - c);  // -0.5, upper branch

  double prev_err = 1e9;
  for (int num : {80, 160, 320}) {
    auto res = toy_bvp_solve(c, 20.0, num, 0.0);
    REQUIRE(res.converged);
    CHECK(res.residual < 1e-10);
    const double err = std::abs(res.C - target);
    CHECK(err < prev_err);
    prev_err = err;

    // the discrete profile follows u = C/x
    for (int k = 0; k < res.x.size(); k += res.x.size() / 7) {
      CHECK(res.u[k] == doctest::Approx(res.C / res.x[k]).epsilon(5e-2));
    }
  }
  CHECK(prev_err < 1e-2);

  // second-order stencil (asymptotic ratio 4 per halving; pre-asymptotic at
  // these resolutions, so require at least 8x per quartering)
  auto coarse = toy_bvp_solve(c, 20.0, 80, 0.0);
  auto fine = toy_bvp_solve(c, 20.0, 320, 0.0);
  CHECK(std::abs(fine.C - target) < 0.125 * std::abs(coarse.C - target));
}
