#pragma once

#include "stefan/grid.hpp"
#include "stefan/params.hpp"

namespace stefan {

/// True Stefan system in front-fixed coordinates. theta[i] = T - Tm at
/// x = (i/N) s; theta[N] is always 0.
struct PlantState {
  double t = 0.0;
  double s = 0.0;
  double sdot = 0.0;  // last interface velocity, drives the grid-motion term
  double cfl = 0.0;   // convective CFL number of the last step
  Field theta;
};

/// Linear initial profile H (s0 - x) on grid_n intervals.
PlantState init_plant(const ScenarioConfig& cfg, const ThermalModel& model);

/// Temperature gradient u_x at the interface.
double interface_flux(const PlantState& st);

/// Advances one step with heat flux qc applied at x = 0. The Stefan ODE is
/// closed with the gradient of the updated temperature. Throws
/// SimulationError if s leaves (0, domain_cap).
PlantState step_plant(const PlantState& st, double qc, double dt,
                      const ThermalModel& model, double domain_cap);

}  // namespace stefan
