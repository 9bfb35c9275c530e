#include "ssns/toy_model.hpp"

#include <cmath>
#include <stdexcept>

namespace ssns {

namespace {

double quadratic(double C, double c) { return C * C + 2.0 * C + c; }
double quadratic_dC(double C) { return 2.0 * C + 2.0; }

}  // namespace

ToyBranch exact_branches(double c) {
  ToyBranch out;
  out.c = c;
  if (c > 1.0) {
    out.multiplicity = ToyMultiplicity::None;
    return out;
  }
  const double disc = std::sqrt(1.0 - c);
  if (disc == 0.0) {
    out.roots = {-1.0};
    out.multiplicity = ToyMultiplicity::One;
  } else {
    out.roots = {-1.0 + disc, -1.0 - disc};
    out.multiplicity = ToyMultiplicity::Two;
  }
  return out;
}

double residual_check(double C, double c) { return -2.0 * C - C * C - c; }

double nonexistence_floor(double c) { return std::max(0.0, c - 1.0); }

ToyNewtonProbe toy_newton_probe(double c, double c_guess, int max_iters, double tol) {
  ToyNewtonProbe out;
  double C = c_guess;
  for (int it = 0; it < max_iters; ++it) {
    const double g = quadratic(C, c);
    if (std::abs(g) <= tol) {
      out.converged = true;
      out.C = C;
      out.residual = std::abs(g);
      out.iters = it;
      return out;
    }
    const double dg = quadratic_dC(C);
    if (dg == 0.0) break;  // at the fold axis: no descent direction left
    C -= g / dg;
  }
  out.C = C;
  out.residual = std::abs(quadratic(C, c));
  out.iters = max_iters;
  out.converged = out.residual <= tol;
  return out;
}

ToyDiagram fold_continuation(double c_start, double c_end, int steps) {
  if (!(c_start < 1.0)) throw std::invalid_argument("fold_continuation: c_start must be < 1");
  if (steps < 8) throw std::invalid_argument("fold_continuation: need at least 8 steps");

  ToyDiagram diagram;
  double C = -1.0 + std::sqrt(1.0 - c_start);  // upper branch
  double c = c_start;
  diagram.points.push_back({c, C, 0, false});

  // arc length of the sweep, estimated from the parabola c = 1 - (C+1)^2
  const double c_low = std::min(c_end, c_start);
  const double arc = std::sqrt(1.0 - c_start) + std::sqrt(1.0 - c_low) + 2.0;
  double h = arc / steps;

  // initial tangent (dC, dc) ~ (-g_c, g_C), oriented toward increasing c;
  // on the upper branch g_C = 2C + 2 > 0, so this moves down-branch into the fold
  Eigen::Vector2d tangent = Eigen::Vector2d(-1.0, quadratic_dC(C)).normalized();

  int fold_index = -1;
  for (int step = 0; step < steps; ++step) {
    // predictor
    Eigen::Vector2d y(C, c);
    Eigen::Vector2d y_try = y + h * tangent;
    // corrector: solve { g(C,c) = 0, tangent . (y - y_pred) = 0 }
    bool ok = false;
    for (int it = 0; it < 30; ++it) {
      const double g = quadratic(y_try(0), y_try(1));
      const double ortho = tangent.dot(y_try - (y + h * tangent));
      if (std::abs(g) < 1e-13 && std::abs(ortho) < 1e-13) {
        ok = true;
        break;
      }
      Eigen::Matrix2d jac;
      jac << quadratic_dC(y_try(0)), 1.0, tangent(0), tangent(1);
      const Eigen::Vector2d delta = jac.partialPivLu().solve(Eigen::Vector2d(-g, -ortho));
      y_try += delta;
      if (!y_try.allFinite()) break;
    }
    if (!ok) {
      h *= 0.5;
      if (h < 1e-10) {
        diagram.stalled = true;
        diagram.message = "continuation stalled";
        break;
      }
      continue;
    }

    Eigen::Vector2d new_tangent = (y_try - y).normalized();
    // fold: the c-component of the tangent changes sign
    if (!diagram.fold_found && tangent(1) > 0.0 && new_tangent(1) <= 0.0) {
      // refine by Newton on {g = 0, g_C = 0}
      double Cf = y_try(0), cf = y_try(1);
      for (int it = 0; it < 30; ++it) {
        const double g = quadratic(Cf, cf);
        const double gc = quadratic_dC(Cf);
        if (std::abs(g) < 1e-14 && std::abs(gc) < 1e-14) break;
        // J = [[g_C, g_c], [g_CC, 0]] = [[2C+2, 1], [2, 0]]
        Eigen::Matrix2d jac;
        jac << gc, 1.0, 2.0, 0.0;
        const Eigen::Vector2d delta = jac.partialPivLu().solve(Eigen::Vector2d(-g, -gc));
        Cf += delta(0);
        cf += delta(1);
      }
      diagram.fold_found = true;
      diagram.fold_c = cf;
      diagram.fold_C = Cf;
      fold_index = static_cast<int>(diagram.points.size());
    }
    tangent = new_tangent;
    C = y_try(0);
    c = y_try(1);
    const int branch = C > -1.0 ? 0 : 1;
    diagram.points.push_back({c, C, branch, false});
    if (branch == 1 && c <= c_end) break;  // lower branch reached the target
  }

  if (fold_index >= 0 && fold_index < static_cast<int>(diagram.points.size()))
    diagram.points[fold_index].fold = true;
  if (diagram.message.empty())
    diagram.message = diagram.fold_found ? "fold traced" : "no fold in range";
  return diagram;
}

ToyBvpResult toy_bvp_solve(double c, double domain_end, int num_points, double c_guess,
                           int max_iters, double tol) {
  if (domain_end <= 1.0) throw std::invalid_argument("toy_bvp_solve: domain_end must exceed 1");
  if (num_points < 8) throw std::invalid_argument("toy_bvp_solve: need at least 8 points");

  const int m = num_points;
  const double h = (domain_end - 1.0) / (m - 1);
  Eigen::VectorXd x(m);
  for (int i = 0; i < m; ++i) x(i) = 1.0 + i * h;

  // unknowns: z = [u_1, ..., u_{m-2} (interior), C]
  const int nu = m - 2;
  auto assemble_u = [&](const Eigen::VectorXd& z) {
    Eigen::VectorXd u(m);
    u(0) = z(nu);                     // u(1) = C
    u(m - 1) = z(nu) / domain_end;    // u(R) = C/R
    u.segment(1, nu) = z.head(nu);
    return u;
  };

  auto residual = [&](const Eigen::VectorXd& z) {
    const Eigen::VectorXd u = assemble_u(z);
    Eigen::VectorXd r(nu + 1);
    for (int i = 1; i <= nu; ++i) {
      const double upp = (u(i + 1) - 2.0 * u(i) + u(i - 1)) / (h * h);
      const double up = (u(i + 1) - u(i - 1)) / (2.0 * h);
      r(i - 1) = -upp + u(i) * up - c / (x(i) * x(i) * x(i));
    }
    // self-similar closure: one-sided u'(1) = -u(1)
    r(nu) = (-3.0 * u(0) + 4.0 * u(1) - u(2)) / (2.0 * h) + u(0);
    return r;
  };

  Eigen::VectorXd z(nu + 1);
  for (int i = 1; i <= nu; ++i) z(i - 1) = c_guess / x(i);
  z(nu) = c_guess;

  ToyBvpResult out;
  Eigen::VectorXd r = residual(z);
  double res = r.lpNorm<Eigen::Infinity>();
  for (int it = 0; it < max_iters; ++it) {
    if (res <= tol) {
      out.converged = true;
      out.newton_iters = it;
      break;
    }
    // dense Jacobian by forward differences on the sparse structure is
    // avoidable, but the analytic one is simple enough
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(nu + 1, nu + 1);
    const Eigen::VectorXd u = assemble_u(z);
    auto col_of = [&](int iu) {
      // index of unknown holding u(iu); -1 when u(iu) is not directly a z entry
      if (iu == 0 || iu == m - 1) return nu;
      return iu - 1;
    };
    auto weight_of = [&](int iu) { return iu == m - 1 ? 1.0 / domain_end : 1.0; };
    for (int i = 1; i <= nu; ++i) {
      const double up = (u(i + 1) - u(i - 1)) / (2.0 * h);
      // d r_i / d u_{i-1}, u_i, u_{i+1}
      const double d_lo = -1.0 / (h * h) - u(i) / (2.0 * h);
      const double d_mid = 2.0 / (h * h) + up;
      const double d_hi = -1.0 / (h * h) + u(i) / (2.0 * h);
      jac(i - 1, col_of(i - 1)) += d_lo * weight_of(i - 1);
      jac(i - 1, col_of(i)) += d_mid * weight_of(i);
      jac(i - 1, col_of(i + 1)) += d_hi * weight_of(i + 1);
    }
    jac(nu, col_of(0)) += (-3.0 / (2.0 * h) + 1.0) * weight_of(0);
    jac(nu, col_of(1)) += 4.0 / (2.0 * h) * weight_of(1);
    jac(nu, col_of(2)) += -1.0 / (2.0 * h) * weight_of(2);

    const Eigen::VectorXd dz = jac.partialPivLu().solve(-r);
    if (!dz.allFinite()) break;
    z += dz;
    r = residual(z);
    res = r.lpNorm<Eigen::Infinity>();
    out.newton_iters = it + 1;
  }
  out.converged = res <= tol;
  out.residual = res;
  out.C = z(nu);
  out.x = x;
  out.u = assemble_u(z);
  return out;
}

}  // namespace ssns
