#include "ssns/ambient.hpp"

#include "ssns/sphere_calculus.hpp"

#include <cmath>
#include <stdexcept>

namespace ssns::ambient {

namespace {

double interp(const Grid& g, const Eigen::VectorXd& v, double t) { return g.interpolate(v, t); }

}  // namespace

Reconstruction make_reconstruction(const AxisymField& u, const ScalarSphereField& p) {
  if (u.grid != p.grid) throw std::invalid_argument("make_reconstruction: grid mismatch");
  Reconstruction rec;
  rec.grid = u.grid;
  rec.a = u.alpha;
  rec.b = u.beta;
  rec.p = p.values;
  const Grid& g = *rec.grid;
  rec.da = g.d1 * rec.a;
  rec.db = g.d1 * rec.b;
  rec.dp = g.d1 * rec.p;
  const Eigen::MatrixXd L = laplace_beltrami_matrix(g);
  rec.lsa = L * rec.a;
  rec.lsb = L * rec.b;
  return rec;
}

double homogeneous_scalar_at(const Grid& grid, const Eigen::VectorXd& profile,
                             const Eigen::VectorXd& pt, int degree) {
  const double r = pt.norm();
  if (r == 0.0) throw std::invalid_argument("homogeneous_scalar_at: origin");
  const double t = pt(grid.n - 1) / r;
  return grid.interpolate(profile, t) * std::pow(r, degree);
}

Eigen::VectorXd force_at(const ForceSpec& f, const Eigen::VectorXd& pt) {
  const Grid& g = *f.grid;
  const int n = g.n;
  const double r = pt.norm();
  const double t = pt(n - 1) / r;
  const double pa = interp(g, f.phi_axis, t);
  const double pb = interp(g, f.phi_radial, t);
  Eigen::VectorXd out = (pb / r) * pt;  // pb * sigma
  out(n - 1) += pa;
  out /= (r * r * r);
  return out;
}

Eigen::VectorXd Reconstruction::velocity(const Eigen::VectorXd& pt) const {
  const Grid& g = *grid;
  const int n = g.n;
  const double r = pt.norm();
  const double t = pt(n - 1) / r;
  const double av = interp(g, a, t), bv = interp(g, b, t);
  Eigen::VectorXd out = (bv / r) * pt;
  out(n - 1) += av;
  out /= r;
  return out;
}

double Reconstruction::pressure(const Eigen::VectorXd& pt) const {
  const Grid& g = *grid;
  const double r = pt.norm();
  const double t = pt(g.n - 1) / r;
  return interp(g, p, t) / (r * r);
}

Eigen::MatrixXd Reconstruction::velocity_gradient(const Eigen::VectorXd& pt) const {
  const Grid& g = *grid;
  const int n = g.n;
  const double r = pt.norm();
  const Eigen::VectorXd sigma = pt / r;
  const double t = sigma(n - 1);
  const double av = interp(g, a, t), bv = interp(g, b, t);
  const double dav = interp(g, da, t), dbv = interp(g, db, t);

  // m = e_n - t sigma  (equals -sin(theta) e_theta; tangential)
  Eigen::VectorXd m = -t * sigma;
  m(n - 1) += 1.0;
  Eigen::VectorXd U = bv * sigma;
  U(n - 1) += av;

  // (grad_S U_j)_i = A'(t) m_i delta_{jn} + B'(t) m_i sigma_j + B (delta_ij - sigma_i sigma_j)
  Eigen::MatrixXd du(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double gs = dav * m(i) * (j == n - 1 ? 1.0 : 0.0) + dbv * m(i) * sigma(j) +
                  bv * ((i == j ? 1.0 : 0.0) - sigma(i) * sigma(j));
      du(i, j) = (gs - sigma(i) * U(j)) / (r * r);
    }
  }
  return du;
}

Eigen::VectorXd Reconstruction::momentum_exact(const Eigen::VectorXd& pt) const {
  const Grid& g = *grid;
  const int n = g.n;
  const double r = pt.norm();
  const Eigen::VectorXd sigma = pt / r;
  const double t = sigma(n - 1);
  const double av = interp(g, a, t), bv = interp(g, b, t);
  const double dbv = interp(g, db, t), dpv = interp(g, dp, t);
  const double lav = interp(g, lsa, t), lbv = interp(g, lsb, t);
  const double pv = interp(g, p, t);

  Eigen::VectorXd m = -t * sigma;
  m(n - 1) += 1.0;
  Eigen::VectorXd U = bv * sigma;
  U(n - 1) += av;

  const double r3 = r * r * r;

  // Delta u_j = r^{-3} [ Ls a delta_{jn} + (Ls b - (n-1) b) sigma_j + 2 B' m_j - (n-3) U_j ]
  Eigen::VectorXd lap = (lbv - (n - 1.0) * bv) * sigma + 2.0 * dbv * m - (n - 3.0) * U;
  lap(n - 1) += lav;
  lap /= r3;

  // grad p = r^{-3} [ P'(t) m - 2 P sigma ]
  Eigen::VectorXd gradp = (dpv * m - 2.0 * pv * sigma) / r3;

  const Eigen::MatrixXd du = velocity_gradient(pt);
  const Eigen::VectorXd u = U / r;
  Eigen::VectorXd adv = du.transpose() * u;  // (u.grad)u_j = sum_i u_i d_i u_j

  return -lap + adv + gradp;
}

double Reconstruction::divergence_exact(const Eigen::VectorXd& pt) const {
  const Grid& g = *grid;
  const int n = g.n;
  const double r = pt.norm();
  const double t = pt(n - 1) / r;
  const double av = interp(g, a, t), bv = interp(g, b, t), dav = interp(g, da, t);
  return ((1.0 - t * t) * dav - t * av + (n - 2.0) * bv) / (r * r);
}

namespace {

template <class F>
double fd_d1(F&& f, double h, int order) {
  if (order == 2) return (f(h) - f(-h)) / (2.0 * h);
  return (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h);
}

template <class F>
double fd_d2(F&& f, double h, int order) {
  if (order == 2) return (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
  return (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) /
         (12.0 * h * h);
}

}  // namespace

Eigen::VectorXd fd_momentum(const Reconstruction& rec, const Eigen::VectorXd& pt, double h,
                            int order) {
  const int n = rec.grid->n;
  Eigen::VectorXd lap = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd du(n, n);  // du(i,j) = d_i u_j
  Eigen::VectorXd gradp(n);
  for (int i = 0; i < n; ++i) {
    auto ushift = [&](double s) {
      Eigen::VectorXd q = pt;
      q(i) += s;
      return rec.velocity(q);
    };
    auto pshift = [&](double s) {
      Eigen::VectorXd q = pt;
      q(i) += s;
      return rec.pressure(q);
    };
    for (int j = 0; j < n; ++j) {
      auto comp = [&](double s) { return ushift(s)(j); };
      lap(j) += fd_d2(comp, h, order);
      du(i, j) = fd_d1(comp, h, order);
    }
    gradp(i) = fd_d1(pshift, h, order);
  }
  const Eigen::VectorXd u = rec.velocity(pt);
  return -lap + du.transpose() * u + gradp;
}

double fd_divergence(const Reconstruction& rec, const Eigen::VectorXd& pt, double h, int order) {
  const int n = rec.grid->n;
  double div = 0.0;
  for (int i = 0; i < n; ++i) {
    auto comp = [&](double s) {
      Eigen::VectorXd q = pt;
      q(i) += s;
      return rec.velocity(q)(i);
    };
    div += fd_d1(comp, h, order);
  }
  return div;
}

}  // namespace ssns::ambient
