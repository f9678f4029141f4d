#include "stefan/control.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "stefan/transforms.hpp"

namespace stefan {

double internal_energy(std::span<const double> u, double s,
                       const ThermalModel& model) {
  return grid::trapezoid(u, s) / model.alpha + s / model.beta;
}

double internal_energy(const PlantState& st, const ThermalModel& model) {
  return internal_energy(st.theta, st.s, model);
}

double internal_energy(const ObserverState& ob, const ThermalModel& model) {
  return internal_energy(ob.theta_hat, ob.y_prev, model);
}

ControlOutput feedback_law(std::span<const double> u, double s, double c,
                           double sr, const ThermalModel& model) {
  const double integral = grid::trapezoid(u, s);
  const double qc =
      -c * model.k * (integral / model.alpha + (s - sr) / model.beta);
  return {qc, integral / model.alpha + s / model.beta};
}

ControlOutput state_feedback(const PlantState& st, const ScenarioConfig& cfg,
                             const ThermalModel& model) {
  return feedback_law(st.theta, st.s, cfg.c, cfg.sr, model);
}

ControlOutput output_feedback(const ObserverState& ob, double y_now,
                              const ScenarioConfig& cfg,
                              const ThermalModel& model) {
  return feedback_law(ob.theta_hat, y_now, cfg.c, cfg.sr, model);
}

double qc_inequality_tolerance(const ScenarioConfig& cfg, double max_abs_qc) {
  const double h = 1.0 / cfg.grid_n;
  return cfg.c * max_abs_qc * (h * h + cfg.c * cfg.dt);
}

QcOdeResidual qc_ode_residual(std::span<const QcSample> trace,
                              const ScenarioConfig& cfg,
                              const ThermalModel& model) {
  if (trace.size() < 3)
    throw std::invalid_argument("qc_ode_residual: need at least 3 samples");
  QcOdeResidual out;
  out.min_margin = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < trace.size(); ++i) {
    const auto& a = trace[i];
    const auto& b = trace[i + 1];
    const double dt = b.t - a.t;
    const double margin = (b.qc - a.qc) / dt + cfg.c * a.qc;
    const double gain =
        1.0 + transforms::kernel_P_integral(a.s, cfg.lambda, model.alpha);
    out.margin.push_back(margin);
    out.residual.push_back(margin - cfg.c * model.k * gain * a.err_flux);
    out.min_margin = std::min(out.min_margin, margin);
  }
  return out;
}

}  // namespace stefan
