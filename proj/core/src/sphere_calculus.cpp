#include "ssns/sphere_calculus.hpp"

#include "ssns/ambient.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ssns {

namespace {

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* who) {
  if (!a || a != b) throw std::invalid_argument(std::string(who) + ": fields must share one grid");
}

// dg/dtheta from nodal x-derivatives
Eigen::VectorXd theta_derivative(const Grid& g, const Eigen::VectorXd& v) {
  return -(g.sin_theta.array() * (g.d1 * v).array());
}

}  // namespace

Eigen::MatrixXd laplace_beltrami_matrix(const Grid& grid) {
  const Eigen::ArrayXd s2 = 1.0 - grid.x.array().square();
  return s2.matrix().asDiagonal() * grid.d2 -
         (grid.n - 1.0) * (grid.x.asDiagonal() * grid.d1);
}

ScalarSphereField laplace_beltrami(const ScalarSphereField& g) {
  const Grid& grid = *g.grid;
  Eigen::VectorXd v = laplace_beltrami_matrix(grid) * g.values;
  return ScalarSphereField(g.grid, std::move(v));
}

ScalarSphereField surface_gradient(const ScalarSphereField& g) {
  return ScalarSphereField(g.grid, theta_derivative(*g.grid, g.values));
}

double lp_norm(const ScalarSphereField& g, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  const Grid& grid = *g.grid;
  const double s = grid.weights.dot(g.values.array().abs().pow(p).matrix());
  return std::pow(grid.sphere_prefactor * s, 1.0 / p);
}

AmbientSample ambient_sample(const Grid& grid, const Eigen::VectorXd& a,
                             const Eigen::VectorXd& b, int k, int degree) {
  const int n = grid.n;
  AmbientSample s;
  s.k = k;
  s.sigma = Eigen::VectorXd::Zero(n);
  s.e_theta = Eigen::VectorXd::Zero(n);
  const double st = grid.sin_theta(k), ct = grid.x(k);
  s.sigma(0) = st;
  s.sigma(n - 1) = ct;
  s.e_theta(0) = ct;
  s.e_theta(n - 1) = -st;

  s.w = b(k) * s.sigma;
  s.w(n - 1) += a(k);

  const Eigen::VectorXd dat = theta_derivative(grid, a);
  const Eigen::VectorXd dbt = theta_derivative(grid, b);

  s.grad_s.resize(n, n);
  s.du.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double gs = dat(k) * s.e_theta(i) * (j == n - 1 ? 1.0 : 0.0) +
                        dbt(k) * s.e_theta(i) * s.sigma(j) +
                        b(k) * ((i == j ? 1.0 : 0.0) - s.sigma(i) * s.sigma(j));
      s.grad_s(i, j) = gs;
      s.du(i, j) = gs + degree * s.sigma(i) * s.w(j);
    }
  }
  return s;
}

ScalarSphereField divergence_residual(const AxisymField& u) {
  const Grid& g = *u.grid;
  const Eigen::ArrayXd x = g.x.array();
  const Eigen::ArrayXd da = (g.d1 * u.alpha).array();
  Eigen::VectorXd res =
      ((1.0 - x.square()) * da - x * u.alpha.array() + (g.n - 2.0) * u.beta.array()).matrix();

  // mandatory cross-check against the direct Cartesian computation
  double scale = 1.0 + res.lpNorm<Eigen::Infinity>();
  for (int k = 0; k < g.size; ++k) {
    const AmbientSample s = ambient_sample(g, u.alpha, u.beta, k, -1);
    const double cart = s.grad_s.trace() - s.w.dot(s.sigma);
    if (std::abs(cart - res(k)) > 1e-9 * scale) {
      std::ostringstream os;
      os << "divergence_residual: route disagreement at node " << k << ": " << res(k) << " vs "
         << cart;
      throw std::runtime_error(os.str());
    }
  }
  return ScalarSphereField(u.grid, std::move(res));
}

std::pair<double, double> grad_norm_squared_routes(const AxisymField& u) {
  const Grid& g = *u.grid;
  Eigen::VectorXd ambient_route(g.size), tangential_route(g.size);
  for (int k = 0; k < g.size; ++k) {
    const AmbientSample s = ambient_sample(g, u.alpha, u.beta, k, -1);
    ambient_route(k) = s.du.squaredNorm();
    tangential_route(k) = s.grad_s.squaredNorm() + s.w.squaredNorm();
  }
  return {g.integrate(ambient_route), g.integrate(tangential_route)};
}

double grad_norm_squared(const AxisymField& u) {
  const auto [ia, ib] = grad_norm_squared_routes(u);
  if (std::abs(ia - ib) > 1e-10 * (1.0 + std::abs(ia) + std::abs(ib)))
    throw std::runtime_error("grad_norm_squared: ambient and tangential routes disagree");
  return ia;
}

double x_norm(const AxisymField& u) {
  const Grid& g = *u.grid;
  double sup_u = 0.0, sup_du = 0.0;
  for (int k = 0; k < g.size; ++k) {
    const AmbientSample s = ambient_sample(g, u.alpha, u.beta, k, -1);
    sup_u = std::max(sup_u, s.w.norm());
    sup_du = std::max(sup_du, s.du.norm());
  }
  return sup_u + sup_du;
}

AdvectionProfiles advection_profiles(const AxisymField& v) {
  const Grid& g = *v.grid;
  const Eigen::ArrayXd x = g.x.array();
  const Eigen::ArrayXd s2 = 1.0 - x.square();
  const Eigen::ArrayXd a = v.alpha.array(), b = v.beta.array();
  const Eigen::ArrayXd da = (g.d1 * v.alpha).array(), db = (g.d1 * v.beta).array();
  AdvectionProfiles out;
  out.n_axis = (s2 * a * da - x * a.square()).matrix();
  out.n_beta = (s2 * a * db - b.square() - 2.0 * x * a * b).matrix();
  return out;
}

namespace {

// split an axisymmetric Cartesian vector at the canonical node point into
// (e_n, sigma) components
void decompose(const Grid& g, int k, const Eigen::VectorXd& vec, const Eigen::VectorXd& sigma,
               const Eigen::VectorXd& e_theta, double& axis, double& radial) {
  axis = -vec.dot(e_theta) / g.sin_theta(k);
  radial = vec.dot(sigma) - g.x(k) * axis;
}

}  // namespace

AdvectionProfiles advection_cartesian(const AxisymField& v) {
  const Grid& g = *v.grid;
  AdvectionProfiles out;
  out.n_axis.resize(g.size);
  out.n_beta.resize(g.size);
  for (int k = 0; k < g.size; ++k) {
    const AmbientSample s = ambient_sample(g, v.alpha, v.beta, k, -1);
    const Eigen::VectorXd adv = s.du.transpose() * s.w;  // sum_i V_i d_i v_j
    decompose(g, k, adv, s.sigma, s.e_theta, out.n_axis(k), out.n_beta(k));
  }
  return out;
}

AdvectionProfiles advection_divergence_form(const AxisymField& v) {
  const Grid& g = *v.grid;
  AdvectionProfiles out;
  out.n_axis.resize(g.size);
  out.n_beta.resize(g.size);
  for (int k = 0; k < g.size; ++k) {
    const AmbientSample s = ambient_sample(g, v.alpha, v.beta, k, -1);
    // d_k (v_k v_j) at r = 1 for the (-2)-homogeneous product v_k v_j:
    //   sum_k [ V_k (grad_S V_j)_k + V_j (grad_S V_k)_k ] - 2 u^r V_j
    const double ur = s.w.dot(s.sigma);
    const double trace_gs = s.grad_s.trace();
    const Eigen::VectorXd vgrad = s.grad_s.transpose() * s.w;  // sum_k V_k (grad_S V_j)_k
    Eigen::VectorXd dv = vgrad + (trace_gs - 2.0 * ur) * s.w;
    decompose(g, k, dv, s.sigma, s.e_theta, out.n_axis(k), out.n_beta(k));
  }
  return out;
}

MomentumProfiles momentum_profiles(const AxisymField& u, const ScalarSphereField& p,
                                   bool include_advection) {
  require_same_grid(u.grid, p.grid, "momentum_profiles");
  const Grid& g = *u.grid;
  const int n = g.n;
  const Eigen::MatrixXd L = laplace_beltrami_matrix(g);
  const Eigen::ArrayXd x = g.x.array();
  const Eigen::ArrayXd lsa = (L * u.alpha).array(), lsb = (L * u.beta).array();
  const Eigen::ArrayXd db = (g.d1 * u.beta).array(), dp = (g.d1 * p.values).array();

  MomentumProfiles out;
  out.r_axis = (-lsa + (n - 3.0) * u.alpha.array() - 2.0 * db + dp).matrix();
  out.r_beta = (-lsb + (2.0 * n - 4.0) * u.beta.array() + 2.0 * x * db - x * dp -
                2.0 * p.values.array())
                   .matrix();
  if (include_advection) {
    const AdvectionProfiles adv = advection_profiles(u);
    out.r_axis += adv.n_axis;
    out.r_beta += adv.n_beta;
  }
  return out;
}

MomentumProfiles momentum_profiles_cartesian(const AxisymField& u, const ScalarSphereField& p,
                                             bool include_advection) {
  require_same_grid(u.grid, p.grid, "momentum_profiles_cartesian");
  const Grid& g = *u.grid;
  const int n = g.n;
  const Eigen::MatrixXd L = laplace_beltrami_matrix(g);
  const Eigen::VectorXd lsa = L * u.alpha, lsb = L * u.beta;
  const Eigen::VectorXd dbt = theta_derivative(g, u.beta);
  const Eigen::VectorXd dpt = theta_derivative(g, p.values);

  MomentumProfiles out;
  out.r_axis.resize(g.size);
  out.r_beta.resize(g.size);
  for (int k = 0; k < g.size; ++k) {
    const AmbientSample s = ambient_sample(g, u.alpha, u.beta, k, -1);
    const double ur = s.w.dot(s.sigma);
    Eigen::VectorXd R(n);
    for (int j = 0; j < n; ++j) {
      // Delta_S of alpha delta_{jn} + beta sigma_j by the product rule with
      // grad_S sigma_j = e_j - sigma_j sigma and Delta_S sigma_j = -(n-1) sigma_j
      const double lap_j = (j == n - 1 ? lsa(k) : 0.0) + lsb(k) * s.sigma(j) +
                           2.0 * dbt(k) * s.e_theta(j) - (n - 1.0) * u.beta(k) * s.sigma(j);
      const double press_j = dpt(k) * s.e_theta(j) - 2.0 * p.values(k) * s.sigma(j);
      R(j) = -lap_j + (n - 3.0) * s.w(j) + press_j;
      if (include_advection) {
        double adv = -ur * s.w(j);
        for (int i = 0; i < n; ++i) adv += s.w(i) * s.grad_s(i, j);
        R(j) += adv;
      }
    }
    decompose(g, k, R, s.sigma, s.e_theta, out.r_axis(k), out.r_beta(k));
  }
  return out;
}

double ambient_consistency_check(const AxisymField& u, const ScalarSphereField& p,
                                 const AmbientCheckOptions& opts) {
  require_same_grid(u.grid, p.grid, "ambient_consistency_check");
  const Grid& g = *u.grid;
  const int n = g.n;

  const ambient::Reconstruction rec = ambient::make_reconstruction(u, p);
  const MomentumProfiles mom = momentum_profiles(u, p, true);
  const ScalarSphereField div = divergence_residual(u);

  double scale = 1.0;
  scale += mom.r_axis.lpNorm<Eigen::Infinity>() + mom.r_beta.lpNorm<Eigen::Infinity>();
  scale += div.values.lpNorm<Eigen::Infinity>();

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> urad(opts.radius_lo, opts.radius_hi);

  double worst = 0.0;
  for (int s = 0; s < opts.samples; ++s) {
    Eigen::VectorXd dir(n);
    for (int i = 0; i < n; ++i) dir(i) = gauss(rng);
    dir.normalize();
    // keep clear of the axis so theta is unambiguous (formulas hold anywhere,
    // this only conditions the comparison)
    if (std::abs(dir(n - 1)) > 0.995) {
      dir(n - 1) *= 0.5;
      dir.normalize();
    }
    const double r = urad(rng);
    const Eigen::VectorXd pt = r * dir;
    const double t = dir(n - 1);

    const Eigen::VectorXd fd = ambient::fd_momentum(rec, pt, opts.step, opts.stencil_order);
    Eigen::VectorXd sphere = (g.interpolate(mom.r_beta, t) / (r * r * r)) * dir;
    sphere(n - 1) += g.interpolate(mom.r_axis, t) / (r * r * r);
    worst = std::max(worst, (fd - sphere).lpNorm<Eigen::Infinity>() / scale);

    const double fddiv = ambient::fd_divergence(rec, pt, opts.step, opts.stencil_order);
    const double sdiv = g.interpolate(div.values, t) / (r * r);
    worst = std::max(worst, std::abs(fddiv - sdiv) / scale);
  }
  if (worst > opts.threshold) {
    std::ostringstream os;
    os << "ambient_consistency_check: relative deviation " << worst << " exceeds threshold "
       << opts.threshold;
    throw std::runtime_error(os.str());
  }
  return worst;
}

}  // namespace ssns
