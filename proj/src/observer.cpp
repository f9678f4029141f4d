#include "stefan/observer.hpp"

#include <cmath>
#include <stdexcept>

#include "stefan/specfun.hpp"

namespace stefan {

double observer_gain(double x, double s, double lambda, double alpha) {
  if (x > s) throw std::domain_error("observer_gain: x beyond the interface");
  if (lambda == 0.0) return 0.0;
  const double z2 = std::max(0.0, lambda / alpha * (s * s - x * x));
  return -lambda * s * specfun::bessel_i1_ratio(z2);
}

double estimate_interface_velocity(double y_now, double y_prev, double dt) {
  return (y_now - y_prev) / dt;
}

ObserverState init_observer(const ScenarioConfig& cfg, const ThermalModel& model) {
  ObserverState ob;
  ob.y_prev = cfg.s0;
  ob.theta_hat.resize(static_cast<size_t>(cfg.grid_n) + 1);
  for (int i = 0; i <= cfg.grid_n; ++i)
    ob.theta_hat[i] = cfg.Hhat * cfg.s0 * (1.0 - static_cast<double>(i) / cfg.grid_n);
  ob.theta_hat.back() = 0.0;
  ob.ydot = -model.beta * interface_flux(ob);
  ob.model_sdot = ob.ydot;
  return ob;
}

double interface_flux(const ObserverState& ob) {
  return grid::interface_derivative(ob.theta_hat, ob.y_prev);
}

ObserverState step_observer(const ObserverState& ob, double y_now, double qc,
                            double dt, const ThermalModel& model,
                            const ObserverGains& gains) {
  if (!(y_now > 0.0)) throw std::domain_error("step_observer: Y must be positive");
  const int n = grid::intervals(ob.theta_hat);
  const double y = ob.y_prev;

  Field source;
  if (gains.lambda != 0.0) {
    const double innovation = (ob.ydot - ob.model_sdot) / model.beta;
    source.resize(ob.theta_hat.size());
    for (int i = 0; i <= n; ++i) {
      const double x = static_cast<double>(i) / n * y;  // never exceeds y
      source[i] = -observer_gain(x, y, gains.lambda, model.alpha) * innovation;
    }
  }

  FrontFixedStep step{y, ob.ydot, qc, dt, model.alpha, model.k, source};
  ObserverState next;
  next.theta_hat = advance_front_fixed(ob.theta_hat, step);
  next.t = ob.t + dt;
  next.y_prev = y_now;
  next.model_sdot = -model.beta * grid::interface_derivative(next.theta_hat, y);
  const double raw = estimate_interface_velocity(y_now, y, dt);
  next.ydot = gains.smoothing * ob.ydot + (1.0 - gains.smoothing) * raw;
  return next;
}

}  // namespace stefan
