#include "stefan/grid.hpp"

#include <algorithm>
#include <cmath>

namespace stefan {
namespace grid {

std::vector<double> nodes(int n) {
  std::vector<double> xi(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) xi[i] = static_cast<double>(i) / n;
  return xi;
}

double trapezoid(std::span<const double> f, double length) {
  const int n = intervals(f);
  if (n < 1) return 0.0;
  double sum = 0.5 * (f.front() + f.back());
  for (int i = 1; i < n; ++i) sum += f[i];
  return sum * length / n;
}

double interface_derivative(std::span<const double> f, double s) {
  const int n = intervals(f);
  if (n < 2) throw std::invalid_argument("interface_derivative: need 3 nodes");
  const double h = s / n;
  return (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) / (2.0 * h);
}

Field gradient(std::span<const double> f, double s) {
  const int n = intervals(f);
  if (n < 2) throw std::invalid_argument("gradient: need 3 nodes");
  const double h = s / n;
  Field g(f.size());
  g[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  for (int i = 1; i < n; ++i) g[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  g[n] = (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) / (2.0 * h);
  return g;
}

Field solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                        std::span<const double> sup, std::span<const double> rhs) {
  const size_t n = diag.size();
  if (sub.size() != n || sup.size() != n || rhs.size() != n || n == 0)
    throw std::invalid_argument("solve_tridiagonal: size mismatch");
  std::vector<double> c(n), d(n);
  double piv = diag[0];
  if (!(std::fabs(piv) > 0.0) || !std::isfinite(piv))
    throw SimulationError(SimulationError::Kind::Numerical,
                          "tridiagonal solve: zero pivot");
  c[0] = sup[0] / piv;
  d[0] = rhs[0] / piv;
  for (size_t i = 1; i < n; ++i) {
    piv = diag[i] - sub[i] * c[i - 1];
    if (!(std::fabs(piv) > 0.0) || !std::isfinite(piv))
      throw SimulationError(SimulationError::Kind::Numerical,
                            "tridiagonal solve: zero pivot");
    c[i] = i + 1 < n ? sup[i] / piv : 0.0;
    d[i] = (rhs[i] - sub[i] * d[i - 1]) / piv;
  }
  Field x(n);
  x[n - 1] = d[n - 1];
  for (size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

Field resample(std::span<const double> f, double s_from, double s_to) {
  const int n = intervals(f);
  Field out(f.size());
  for (int i = 0; i <= n; ++i) {
    const double x = s_to * i / n;
    const double pos = x / s_from * n;
    if (pos >= n) {
      out[i] = f[n];
      continue;
    }
    const int j = static_cast<int>(pos);
    const double w = pos - j;
    out[i] = (1.0 - w) * f[j] + w * f[j + 1];
  }
  return out;
}

double max_abs(std::span<const double> f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace grid

Field advance_front_fixed(std::span<const double> v, const FrontFixedStep& step,
                          double* cfl) {
  const int n = grid::intervals(v);
  const double h = 1.0 / n;
  const double r = step.alpha / (step.s * step.s) * step.dt / (h * h);
  const double g = -step.flux_in / step.k * step.s;  // v_xi at xi = 0
  const bool has_src = !step.source.empty();

  // Unknowns are nodes 0..n-1; node n is pinned to 0.
  std::vector<double> sub(n, -r), diag(n, 1.0 + 2.0 * r), sup(n, -r), rhs(n);
  sup[0] = -2.0 * r;
  rhs[0] = v[0] - 2.0 * r * h * g;
  if (has_src) rhs[0] += step.dt * step.source[0];
  double max_speed = 0.0;
  for (int i = 1; i < n; ++i) {
    const double a = (static_cast<double>(i) * h) * step.sdot / step.s;
    max_speed = std::max(max_speed, std::fabs(a));
    rhs[i] = v[i] + step.dt * a * (v[i + 1] - v[i - 1]) / (2.0 * h);
    if (has_src) rhs[i] += step.dt * step.source[i];
  }
  if (cfl) *cfl = step.dt * max_speed / h;

  Field inner = grid::solve_tridiagonal(sub, diag, sup, rhs);
  Field out(v.size());
  std::copy(inner.begin(), inner.end(), out.begin());
  out[n] = 0.0;
  for (double x : out)
    if (!std::isfinite(x))
      throw SimulationError(SimulationError::Kind::BlowUp,
                            "non-finite temperature sample");
  return out;
}

}  // namespace stefan
