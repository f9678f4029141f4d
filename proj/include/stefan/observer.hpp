#pragma once

#include "stefan/grid.hpp"
#include "stefan/params.hpp"

namespace stefan {

/// Estimated temperature on [0, y_prev], same normalized grid as the plant.
struct ObserverState {
  double t = 0.0;
  double y_prev = 0.0;  // last assimilated measurement Y = s
  double ydot = 0.0;    // velocity estimate paired with theta_hat
  // Interface velocity the estimate itself predicts over the last step,
  // -beta d(theta_hat)/dx with the same interface position the plant update
  // uses. The innovation is (ydot - model_sdot) / beta.
  double model_sdot = 0.0;
  Field theta_hat;
};

struct ObserverGains {
  double lambda = 0.0;
  double smoothing = 0.0;  // EMA factor on the velocity estimate, 0 = raw
};

/// Output-injection gain -lambda s I1(z)/z, z^2 = (lambda/alpha)(s^2 - x^2).
/// Non-positive on 0 <= x <= s; throws std::domain_error for x > s.
double observer_gain(double x, double s, double lambda, double alpha);

/// Backward difference of the measurement.
double estimate_interface_velocity(double y_now, double y_prev, double dt);

/// Initial estimate Hhat (s0 - x); the velocity estimate starts at the
/// model-consistent -beta * d(theta_hat)/dx at the interface.
ObserverState init_observer(const ScenarioConfig& cfg, const ThermalModel& model);

/// Estimated temperature gradient at the measured interface.
double interface_flux(const ObserverState& ob);

/// Advances the observer over one step using the flux qc that the plant
/// received over the same interval, then assimilates the new measurement.
/// The injection term uses the previous estimate and velocity.
ObserverState step_observer(const ObserverState& ob, double y_now, double qc,
                            double dt, const ThermalModel& model,
                            const ObserverGains& gains);

}  // namespace stefan
