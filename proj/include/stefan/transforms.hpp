#pragma once

// Backstepping kernels and the Volterra transforms built from them. These
// act on snapshots only; the closed loop itself never calls them.

#include <span>

#include "stefan/grid.hpp"

namespace stefan::transforms {

/// P(x, y) = (lambda/alpha) y I1(z)/z, z^2 = (lambda/alpha)(y^2 - x^2).
/// Requires 0 <= x <= y.
double kernel_P(double x, double y, double lambda, double alpha);

/// Q(x, y), same as kernel_P with J1 in place of I1.
double kernel_Q(double x, double y, double lambda, double alpha);

enum class KernelKind { P, Q };

/// Kernel samples on the upper triangle {(xi_i, xi_j): i <= j} scaled to
/// [0, s]. Row i holds j = i..N.
class KernelField {
 public:
  KernelField(KernelKind kind, int n, double s, double lambda, double alpha);

  int intervals() const { return n_; }
  double s() const { return s_; }
  double at(int i, int j) const { return values_[offset(i) + (j - i)]; }

  /// out_i = f_i + sign * int_{x_i}^{s} K(x_i, y) f(y) dy (trapezoid).
  Field apply(std::span<const double> f, double sign) const;

 private:
  size_t offset(int i) const {
    return static_cast<size_t>(i) * (2 * n_ + 3 - i) / 2;
  }
  int n_;
  double s_;
  std::vector<double> values_;
};

/// u = w + int_x^s P(x, y) w(y) dy.
Field apply_direct(std::span<const double> w, double s, double lambda,
                   double alpha);

/// w = u - int_x^s Q(x, y) u(y) dy.
Field apply_inverse(std::span<const double> u, double s, double lambda,
                    double alpha);

/// psi(x) = (c/beta) sqrt(alpha/c) sin(sqrt(c/alpha) x); odd in x.
double psi(double x, double c, double alpha, double beta);

/// w(x) = u(x) - (c/alpha) int_x^s (x - y) u(y) dy + (c/beta)(s - x) X
/// with X = s - sr.
Field controller_transform(std::span<const double> u, double X, double s,
                           double c, double alpha, double beta);

/// u(x) = w(x) + (beta/alpha) int_x^s psi(x - y) w(y) dy + psi(x - s) X.
Field controller_inverse(std::span<const double> w, double X, double s,
                         double c, double alpha, double beta);

/// int_0^s P(x, s) dx by composite Simpson on `panels` (even) panels.
double kernel_P_integral(double s, double lambda, double alpha, int panels = 64);

}  // namespace stefan::transforms
