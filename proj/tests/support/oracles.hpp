#pragma once

// Test-side oracles, coded independently of the library paths they check:
// adaptive Simpson quadrature, least-squares slope fits, and a fundamental-
// solution convolution that reproduces the velocity of the linear problem on
// a coarse ambient grid.

#include "ssns/fields.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace ssns_test {

// Recursive adaptive Simpson on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 24);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

// Velocity of  -Delta u + grad p = f, div u = 0  at the ambient point
// x_point, via convolution of the force reconstruction with the fundamental
// tensor.  The reduction to three quadrature variables (radius, polar angle
// of y, and the first slant coordinate) is exact for axisymmetric forces.
Eigen::VectorXd stokes_convolution_velocity(const ssns::ForceSpec& f,
                                            const Eigen::VectorXd& x_point, int psi_points = 24,
                                            int omega_points = 16);

}  // namespace ssns_test
