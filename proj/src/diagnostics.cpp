#include "stefan/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "stefan/grid.hpp"

namespace stefan::diagnostics {

double h1_norm_sq(std::span<const double> f, double s, bool include_l2) {
  const Field g = grid::gradient(f, s);
  Field sq(f.size());
  for (size_t i = 0; i < f.size(); ++i) sq[i] = g[i] * g[i];
  double total = grid::trapezoid(sq, s);
  if (include_l2) {
    for (size_t i = 0; i < f.size(); ++i) sq[i] = f[i] * f[i];
    total += grid::trapezoid(sq, s);
  }
  return total;
}

LyapunovConstants lyapunov_constants(const ScenarioConfig& cfg,
                                     const ThermalModel& model) {
  const double sr = cfg.sr;
  LyapunovConstants k{};
  k.p = cfg.c * model.alpha / (16.0 * model.beta * model.beta * sr);
  k.a = std::max(sr * sr, 16.0 * cfg.c * sr / model.alpha);
  k.b = std::min({model.alpha / (8.0 * sr * sr), cfg.c, 2.0 * cfg.lambda});
  k.d = cfg.lyapunov_d > 0.0 ? cfg.lyapunov_d : std::max(1.0, k.a * sr);
  return k;
}

LyapunovSample lyapunov_sample(std::span<const double> w_hat,
                               std::span<const double> w_tilde, double s,
                               double X, const LyapunovConstants& k,
                               bool include_l2) {
  LyapunovSample out{};
  out.V1 = 0.5 * h1_norm_sq(w_tilde, s, include_l2);
  out.Vtot = 0.5 * h1_norm_sq(w_hat, s, include_l2) + 0.5 * k.p * X * X +
             k.d * out.V1;
  out.V = out.Vtot * std::exp(-k.a * s);
  return out;
}

double grid_tolerance(int grid_n, double dt) {
  const double h = 1.0 / grid_n;
  return kGridToleranceScale * (h * h + dt);
}

bool ConstraintReport::all_passed() const {
  return !first_violation_any().has_value();
}

std::optional<double> ConstraintReport::first_violation_any() const {
  std::optional<double> first;
  for (const auto& v : first_violation)
    if (v && (!first || *v < *first)) first = v;
  return first;
}

std::string ConstraintReport::to_text() const {
  std::ostringstream os;
  char buf[128];
  std::snprintf(buf, sizeof buf, "constraint monitor: %zu steps, tolerance %.3e\n",
                flags.size(), tolerance);
  os << buf;
  for (int f = 0; f < 5; ++f) {
    if (first_violation[f]) {
      std::snprintf(buf, sizeof buf, "  FAIL %s first violated at t=%.6g\n",
                    kFlagNames[f], *first_violation[f]);
    } else {
      std::snprintf(buf, sizeof buf, "  PASS %s\n", kFlagNames[f]);
    }
    os << buf;
  }
  return os.str();
}

ConstraintReport monitor_constraints(std::span<const StepRecord> steps,
                                     double sr, double tolerance) {
  ConstraintReport rep;
  rep.tolerance = tolerance;
  rep.flags.reserve(steps.size());
  for (size_t i = 0; i < steps.size(); ++i) {
    const auto& r = steps[i];
    ConstraintFlags f{};
    f.qc_positive = r.qc > 0.0;
    f.s_increasing = i == 0 ? r.sdot > 0.0 : r.s > steps[i - 1].s;
    f.s_below_sr = r.s < sr;
    f.u_nonnegative = r.min_u >= -tolerance;
    f.error_nonpositive = r.max_err <= tolerance;
    const bool ok[5] = {f.qc_positive, f.s_increasing, f.s_below_sr,
                        f.u_nonnegative, f.error_nonpositive};
    for (int k = 0; k < 5; ++k)
      if (!ok[k] && !rep.first_violation[k]) rep.first_violation[k] = r.t;
    rep.flags.push_back(f);
  }
  return rep;
}

double fit_decay_rate(std::span<const double> t, std::span<const double> value) {
  if (t.size() != value.size())
    throw std::invalid_argument("fit_decay_rate: size mismatch");
  if (t.size() < 10)
    throw std::invalid_argument("fit_decay_rate: need at least 10 samples");
  for (double v : value)
    if (!(v > 0.0))
      throw std::invalid_argument("fit_decay_rate: non-positive sample");
  const size_t first = t.size() / 2;
  const double m = static_cast<double>(t.size() - first);
  double st = 0.0, sy = 0.0;
  for (size_t i = first; i < t.size(); ++i) {
    st += t[i];
    sy += std::log(value[i]);
  }
  const double tbar = st / m, ybar = sy / m;
  double num = 0.0, den = 0.0;
  for (size_t i = first; i < t.size(); ++i) {
    num += (t[i] - tbar) * (std::log(value[i]) - ybar);
    den += (t[i] - tbar) * (t[i] - tbar);
  }
  if (den == 0.0) throw std::invalid_argument("fit_decay_rate: degenerate times");
  return -num / den;
}

double fit_decay_rate_above_floor(std::span<const double> t,
                                  std::span<const double> value, double floor) {
  if (t.size() != value.size() || value.empty())
    throw std::invalid_argument("fit_decay_rate: size mismatch");
  const double cut = floor * value.front();
  size_t n = 0;
  while (n < value.size() && value[n] > cut) ++n;
  return fit_decay_rate(t.first(n), value.first(n));
}

}  // namespace stefan::diagnostics
