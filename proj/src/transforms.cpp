#include "stefan/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "stefan/specfun.hpp"

namespace stefan::transforms {

namespace {

double squared_arg(double x, double y, double lambda, double alpha) {
  if (x > y) throw std::domain_error("kernel evaluated below the diagonal");
  if (x < 0.0) throw std::domain_error("kernel evaluated at negative x");
  return std::max(0.0, lambda / alpha * (y * y - x * x));
}

}  // namespace

double kernel_P(double x, double y, double lambda, double alpha) {
  const double z2 = squared_arg(x, y, lambda, alpha);
  if (lambda == 0.0) return 0.0;
  return lambda / alpha * y * specfun::bessel_i1_ratio(z2);
}

double kernel_Q(double x, double y, double lambda, double alpha) {
  const double z2 = squared_arg(x, y, lambda, alpha);
  if (lambda == 0.0) return 0.0;
  return lambda / alpha * y * specfun::bessel_j1_ratio(z2);
}

KernelField::KernelField(KernelKind kind, int n, double s, double lambda,
                         double alpha)
    : n_(n), s_(s), values_(offset(n + 1)) {
  const double h = s / n;
  for (int i = 0; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      const double x = i * h, y = j * h;
      values_[offset(i) + (j - i)] = kind == KernelKind::P
                                         ? kernel_P(x, y, lambda, alpha)
                                         : kernel_Q(x, y, lambda, alpha);
    }
  }
}

Field KernelField::apply(std::span<const double> f, double sign) const {
  if (grid::intervals(f) != n_)
    throw std::invalid_argument("KernelField::apply: grid mismatch");
  const double h = s_ / n_;
  Field out(f.begin(), f.end());
  for (int i = 0; i < n_; ++i) {
    double sum = 0.5 * (at(i, i) * f[i] + at(i, n_) * f[n_]);
    for (int j = i + 1; j < n_; ++j) sum += at(i, j) * f[j];
    out[i] += sign * h * sum;
  }
  return out;
}

Field apply_direct(std::span<const double> w, double s, double lambda,
                   double alpha) {
  return KernelField(KernelKind::P, grid::intervals(w), s, lambda, alpha)
      .apply(w, +1.0);
}

Field apply_inverse(std::span<const double> u, double s, double lambda,
                    double alpha) {
  return KernelField(KernelKind::Q, grid::intervals(u), s, lambda, alpha)
      .apply(u, -1.0);
}

double psi(double x, double c, double alpha, double beta) {
  const double r = std::sqrt(c / alpha);
  return c / beta / r * std::sin(r * x);
}

Field controller_transform(std::span<const double> u, double X, double s,
                           double c, double alpha, double beta) {
  const int n = grid::intervals(u);
  const double h = s / n;
  Field w(u.size());
  for (int i = 0; i <= n; ++i) {
    const double x = i * h;
    double sum = 0.0;
    if (i < n) {
      // (x - y) vanishes at y = x, so the first trapezoid end drops out.
      sum = 0.5 * (x - s) * u[n];
      for (int j = i + 1; j < n; ++j) sum += (x - j * h) * u[j];
      sum *= h;
    }
    w[i] = u[i] - c / alpha * sum + c / beta * (s - x) * X;
  }
  return w;
}

Field controller_inverse(std::span<const double> w, double X, double s,
                         double c, double alpha, double beta) {
  const int n = grid::intervals(w);
  const double h = s / n;
  Field u(w.size());
  for (int i = 0; i <= n; ++i) {
    const double x = i * h;
    double sum = 0.0;
    if (i < n) {
      sum = 0.5 * psi(x - s, c, alpha, beta) * w[n];
      for (int j = i + 1; j < n; ++j) sum += psi(x - j * h, c, alpha, beta) * w[j];
      sum *= h;
    }
    u[i] = w[i] + beta / alpha * sum + psi(x - s, c, alpha, beta) * X;
  }
  return u;
}

double kernel_P_integral(double s, double lambda, double alpha, int panels) {
  if (panels < 2 || panels % 2) throw std::invalid_argument("panels must be even");
  const double h = s / panels;
  double sum = kernel_P(0.0, s, lambda, alpha) + kernel_P(s, s, lambda, alpha);
  for (int i = 1; i < panels; ++i)
    sum += (i % 2 ? 4.0 : 2.0) * kernel_P(i * h, s, lambda, alpha);
  return sum * h / 3.0;
}

}  // namespace stefan::transforms
