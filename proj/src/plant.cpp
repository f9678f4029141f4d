#include "stefan/plant.hpp"

#include <cmath>
#include <string>

namespace stefan {

PlantState init_plant(const ScenarioConfig& cfg, const ThermalModel& model) {
  PlantState st;
  st.s = cfg.s0;
  st.theta.resize(static_cast<size_t>(cfg.grid_n) + 1);
  for (int i = 0; i <= cfg.grid_n; ++i)
    st.theta[i] = cfg.H * cfg.s0 * (1.0 - static_cast<double>(i) / cfg.grid_n);
  st.theta.back() = 0.0;
  st.sdot = -model.beta * interface_flux(st);
  return st;
}

double interface_flux(const PlantState& st) {
  return grid::interface_derivative(st.theta, st.s);
}

PlantState step_plant(const PlantState& st, double qc, double dt,
                      const ThermalModel& model, double domain_cap) {
  FrontFixedStep step{st.s, st.sdot, qc, dt, model.alpha, model.k, {}};
  PlantState next;
  next.theta = advance_front_fixed(st.theta, step, &next.cfl);
  next.t = st.t + dt;

  const double ux = grid::interface_derivative(next.theta, st.s);
  next.sdot = -model.beta * ux;
  next.s = st.s + dt * next.sdot;
  if (!(next.s > 0.0) || !std::isfinite(next.s))
    throw SimulationError(SimulationError::Kind::BlowUp,
                          "interface position left (0, inf) at t=" +
                              std::to_string(next.t));
  if (next.s >= 0.95 * domain_cap)
    throw SimulationError(SimulationError::Kind::DomainExceeded,
                          "interface reached 0.95 of the slab at t=" +
                              std::to_string(next.t));
  return next;
}

}  // namespace stefan
