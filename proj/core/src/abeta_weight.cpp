#include "ssns/abeta_weight.hpp"

#include "ssns/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ssns {

namespace {

double gamma_exponent(const WeightConfig& cfg) { return 2.0 * cfg.beta - cfg.n + 1.0; }

// C(t0) = integral_{t0}^{1} (1-t)^p (1+t)^p dt with p = (n-3)/2, computed with
// a Gauss-Jacobi rule that absorbs the (1-t)^p endpoint factor exactly.
class CapIntegral {
 public:
  CapIntegral(int n, int points) : p_(0.5 * (n - 3)) {
    gauss_jacobi(points, p_, 0.0, nodes_, weights_);
  }

  double operator()(double t0) const {
    if (t0 >= 1.0) return 0.0;
    if (t0 < -1.0) t0 = -1.0;
    const double half = 0.5 * (1.0 - t0);
    // t = (1+t0)/2 + half * x;  (1-t) = half * (1-x)
    double sum = 0.0;
    for (int i = 0; i < nodes_.size(); ++i) {
      const double t = 0.5 * (1.0 + t0) + half * nodes_(i);
      sum += weights_(i) * std::pow(1.0 + t, p_);
    }
    return std::pow(half, p_ + 1.0) * sum;
  }

  double full() const { return (*this)(-1.0); }

 private:
  double p_;
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
};

// Panels for the radial integral on [lo, hi]: a uniform middle half with
// geometric grading toward both endpoints, where the integrand behaves like
// fractional powers (cap shrinking to a point; weight powers when lo = 0).
std::vector<std::pair<double, double>> build_panels(double lo, double hi) {
  std::vector<std::pair<double, double>> panels;
  const double len = hi - lo;
  if (len <= 0.0) return panels;
  const int uniform = 8;
  const int graded = 28;
  const double quarter = 0.25 * len;

  double prev = lo;
  for (int j = graded; j >= 0; --j) {
    const double next = lo + quarter * std::pow(2.0, -j);
    panels.emplace_back(prev, next);
    prev = next;
  }
  for (int j = 1; j <= uniform; ++j) {
    const double next = lo + quarter + 0.5 * len * j / uniform;
    panels.emplace_back(prev, next);
    prev = next;
  }
  for (int j = 0; j <= graded; ++j) {
    const double next = (j == graded) ? hi : hi - quarter * std::pow(2.0, -(j + 1));
    panels.emplace_back(prev, next);
    prev = next;
  }
  return panels;
}

}  // namespace

double weight_value(double x_norm, const WeightConfig& cfg) {
  const double g = gamma_exponent(cfg);
  if (x_norm < 0.0) throw std::invalid_argument("weight_value: negative radius");
  if (x_norm == 0.0 && g < 0.0)
    throw std::invalid_argument("weight_value: weight unbounded at the origin for 2b-n+1 < 0");
  return std::pow(x_norm, g) / ((1.0 + x_norm) * (1.0 + x_norm));
}

double abeta_product(double center_norm, double radius, const WeightConfig& cfg) {
  if (!(radius > 0.0)) throw std::invalid_argument("abeta_product: radius must be positive");
  if (!(cfg.beta > 1.0)) throw std::invalid_argument("abeta_product: beta must exceed 1");
  const double d = center_norm;
  const double inv_power = -1.0 / (cfg.beta - 1.0);

  auto weight = [&](double r) {
    return cfg.radial_weight ? cfg.radial_weight(r) : weight_value(r, cfg);
  };

  const CapIntegral cap(cfg.n, cfg.panel_points + 8);
  const double cap_full = cap.full();
  const double lo = std::max(0.0, d - radius);
  const double hi = d + radius;

  Eigen::VectorXd gl_nodes, gl_weights;
  // accumulate Q(1), Q(a), Q(a^{-1/(b-1)}) against the same quadrature measure
  double q_one = 0.0, q_a = 0.0, q_inv = 0.0;
  for (const auto& [pa, pb] : build_panels(lo, hi)) {
    gauss_legendre(cfg.panel_points, pa, pb, gl_nodes, gl_weights);
    for (int i = 0; i < gl_nodes.size(); ++i) {
      const double rho = gl_nodes(i);
      if (rho <= 0.0) continue;
      double cap_val;
      if (d == 0.0) {
        cap_val = cap_full;
      } else {
        const double t0 = (rho * rho + d * d - radius * radius) / (2.0 * rho * d);
        cap_val = cap(std::min(1.0, std::max(-1.0, t0)));
      }
      if (cap_val <= 0.0) continue;
      const double measure = gl_weights(i) * std::pow(rho, cfg.n - 1.0) * cap_val;
      const double a_val = weight(rho);
      q_one += measure;
      q_a += measure * a_val;
      q_inv += measure * std::pow(a_val, inv_power);
    }
  }
  if (!(q_one > 0.0)) throw std::runtime_error("abeta_product: empty quadrature measure");
  // averages by the quadrature measure itself (constant weights give exactly 1)
  const double avg_a = q_a / q_one;
  const double avg_inv = q_inv / q_one;
  return std::exp(std::log(avg_a) + (cfg.beta - 1.0) * std::log(avg_inv));
}

std::vector<std::pair<double, double>> default_ball_samples() {
  // log-spaced grid of > 100 balls spanning the four regimes
  std::vector<std::pair<double, double>> balls;
  auto log_spaced = [](double lo, double hi, int count) {
    std::vector<double> v(count);
    for (int k = 0; k < count; ++k)
      v[k] = lo * std::pow(hi / lo, count > 1 ? double(k) / (count - 1) : 0.0);
    return v;
  };
  // origin-centered, R < 2 and R >= 2
  for (double r : log_spaced(1e-3, 1.9, 14)) balls.emplace_back(0.0, r);
  for (double r : log_spaced(2.0, 200.0, 10)) balls.emplace_back(0.0, r);
  // off-center, overlapping regime R > |x0|/2
  for (double d : log_spaced(0.25, 50.0, 8))
    for (double f : {0.6, 1.0, 2.0, 5.0}) balls.emplace_back(d, f * d);
  // off-center, far regime R <= |x0|/2
  for (double d : log_spaced(0.5, 200.0, 12))
    for (double f : {1.0 / 16.0, 1.0 / 8.0, 1.0 / 4.0, 1.0 / 2.0}) balls.emplace_back(d, f * d);
  return balls;
}

ScanResult abeta_scan(const WeightConfig& cfg,
                      const std::vector<std::pair<double, double>>& balls, double cap) {
  ScanResult out;
  out.cap = cap;
  const double g = gamma_exponent(cfg);
  for (const auto& [d, r] : balls) {
    BallSample s;
    s.center_norm = d;
    s.radius = r;
    s.product = abeta_product(d, r, cfg);
    if (d == 0.0)
      s.proof_case = r < 2.0 ? "origin-small" : "origin-large";
    else
      s.proof_case = r > 0.5 * d ? "offcenter-large" : "offcenter-small";

    if (!std::isfinite(s.product))
      throw std::runtime_error("abeta_scan: non-finite product at |x0|=" + std::to_string(d) +
                               " R=" + std::to_string(r));
    if (s.product < 1.0 - 1e-6)
      throw std::runtime_error("abeta_scan: Jensen lower bound violated at |x0|=" +
                               std::to_string(d) + " R=" + std::to_string(r));

    if (s.proof_case == "offcenter-small" && !cfg.radial_weight) {
      // pointwise comparability on [d-R, d+R]: radii vary by a factor <= 3 and
      // (1+r) by less, so max/min <= 3^{|g|} * 16; the product obeys the same
      // bound since  avg(a) <= max a  and  avg(a^{-1/(b-1)})^{b-1} <= 1/min a.
      double amin = std::numeric_limits<double>::infinity(), amax = 0.0;
      const int samples = 2048;
      for (int i = 0; i <= samples; ++i) {
        const double rho = (d - r) + 2.0 * r * i / samples;
        const double v = weight_value(rho, cfg);
        amin = std::min(amin, v);
        amax = std::max(amax, v);
      }
      const double bound = std::pow(3.0, std::abs(g)) * 16.0;
      if (amax / amin > bound * (1.0 + 1e-9))
        throw std::runtime_error("abeta_scan: comparability bound violated at |x0|=" +
                                 std::to_string(d) + " R=" + std::to_string(r));
      if (s.product > bound * (1.0 + 1e-9))
        throw std::runtime_error("abeta_scan: product exceeds the comparability bound at |x0|=" +
                                 std::to_string(d) + " R=" + std::to_string(r));
    }

    s.exceeded_cap = s.product > cap;
    if (s.exceeded_cap) ++out.flagged;
    out.sup_product = std::max(out.sup_product, s.product);
    out.table.push_back(std::move(s));
  }
  return out;
}

}  // namespace ssns
