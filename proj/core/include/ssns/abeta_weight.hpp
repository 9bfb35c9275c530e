#pragma once

// Muckenhoupt-type weight check for a(x) = |x|^{2 beta - n + 1} / (1 + |x|)^2:
// evaluates the A_beta product
//
//   P(B) = (avg_B a) * (avg_B a^{-1/(beta-1)})^{beta-1}
//
// over families of balls B = B_R(x0).  The weight is radial, so the ball
// integral reduces to one radial integral against the spherical-cap measure:
// with d = |x0|,
//
//   integral_B g(|x|) dx = |S^{n-2}| * integral g(rho) rho^{n-1} C(t0(rho)) drho,
//   t0(rho) = clamp((rho^2 + d^2 - R^2)/(2 rho d), -1, 1),
//   C(t0)   = integral_{t0}^{1} (1-t^2)^{(n-3)/2} dt.
//
// Averages are normalized by the quadrature measure of the ball itself, so a
// constant weight yields product 1 exactly and quadrature normalization error
// cancels in the ratio.

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace ssns {

struct WeightConfig {
  int n = 5;
  double beta = 2.0;
  int panel_points = 24;  // Gauss-Legendre points per radial panel
  // optional override of the radial weight profile (e.g. a constant for
  // normalization tests); empty -> the built-in formula
  std::function<double(double)> radial_weight;
};

// The built-in formula |x|^{2 beta - n + 1}/(1+|x|)^2.  Rejects x_norm = 0
// when the power is negative (the weight blows up there).
double weight_value(double x_norm, const WeightConfig& cfg);

// A_beta product over B_R(center), center given by its distance from the
// origin (the weight is radial, so only |x0| matters).
double abeta_product(double center_norm, double radius, const WeightConfig& cfg);

struct BallSample {
  double center_norm = 0.0;
  double radius = 0.0;
  double product = 0.0;
  std::string proof_case;  // origin-small / origin-large / offcenter-large / offcenter-small
  bool exceeded_cap = false;
};

struct ScanResult {
  std::vector<BallSample> table;
  double sup_product = 0.0;
  int flagged = 0;   // samples above the cap
  double cap = 0.0;
};

// Sample list covering the four proof cases: balls at the origin with small
// and large radius, off-center overlapping balls (R > |x0|/2), and far
// off-center balls (R <= |x0|/2).
std::vector<std::pair<double, double>> default_ball_samples();

// Evaluates the product over every ball, classifies the proof case, asserts
// the Jensen lower bound (product >= 1 - 1e-6) and, for the far off-center
// case with the built-in weight, the pointwise comparability bound
// max a / min a <= 3^{|2 beta - n + 1|} * 16 (and the product under the same
// bound).  Throws on violations; products above `cap` are only flagged.
ScanResult abeta_scan(const WeightConfig& cfg,
                      const std::vector<std::pair<double, double>>& balls, double cap);

}  // namespace ssns
