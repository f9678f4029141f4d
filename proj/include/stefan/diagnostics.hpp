#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stefan/params.hpp"
#include "stefan/trace.hpp"

namespace stefan::diagnostics {

/// int_0^s f^2 dx + int_0^s f_x^2 dx, both by trapezoid; the gradient comes
/// from central differences. With include_l2 = false only the gradient
/// term is returned.
double h1_norm_sq(std::span<const double> f, double s, bool include_l2 = true);

struct LyapunovConstants {
  double p;  // c alpha / (16 beta^2 sr)
  double a;  // max{sr^2, 16 c sr / alpha}
  double b;  // min{alpha / (8 sr^2), c, 2 lambda}
  double d;  // weight of V1 in Vtot
};

/// d defaults to max(1, a sr) unless cfg.lyapunov_d > 0.
LyapunovConstants lyapunov_constants(const ScenarioConfig& cfg,
                                     const ThermalModel& model);

struct LyapunovSample {
  double V1;
  double Vtot;
  double V;
};

LyapunovSample lyapunov_sample(std::span<const double> w_hat,
                               std::span<const double> w_tilde, double s,
                               double X, const LyapunovConstants& k,
                               bool include_l2 = true);

/// Grid tolerance C (dxi^2 + dt) used by the sign monitors, with
/// C = kGridToleranceScale (K, or K/s for the dt term).
inline constexpr double kGridToleranceScale = 1.0e-3;
double grid_tolerance(int grid_n, double dt);

struct ConstraintFlags {
  bool qc_positive;
  bool s_increasing;
  bool s_below_sr;
  bool u_nonnegative;
  bool error_nonpositive;

  bool all() const {
    return qc_positive && s_increasing && s_below_sr && u_nonnegative &&
           error_nonpositive;
  }
};

struct ConstraintReport {
  std::vector<ConstraintFlags> flags;  // one per step
  double tolerance = 0.0;
  // Time of the first violation per flag, in declaration order.
  std::optional<double> first_violation[5];

  bool all_passed() const;
  std::optional<double> first_violation_any() const;
  std::string to_text() const;
};

inline constexpr const char* kFlagNames[5] = {
    "qc_positive", "s_increasing", "s_below_sr", "u_nonnegative",
    "error_nonpositive"};

/// qc > 0, strictly increasing s (sdot > 0 at the first step), s < sr,
/// min u >= -tol, max (u - u_hat) <= tol.
ConstraintReport monitor_constraints(std::span<const StepRecord> steps,
                                     double sr, double tolerance);

/// Negated least-squares slope of log(value) against t over the final half
/// of the series. Throws std::invalid_argument for fewer than 10 samples,
/// mismatched sizes or a non-positive value.
double fit_decay_rate(std::span<const double> t, std::span<const double> value);

/// Below this fraction of its initial value a decaying squared norm is
/// round-off (1e-9 in amplitude) and carries no rate information.
inline constexpr double kDecayFloor = 1.0e-18;

/// fit_decay_rate restricted to the leading samples with
/// value > floor * value[0]; the whole series if it never gets that low.
double fit_decay_rate_above_floor(std::span<const double> t,
                                  std::span<const double> value,
                                  double floor = kDecayFloor);

}  // namespace stefan::diagnostics
