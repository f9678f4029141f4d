#pragma once

#include <span>
#include <vector>

#include "stefan/observer.hpp"
#include "stefan/params.hpp"
#include "stefan/plant.hpp"

namespace stefan {

struct ControlOutput {
  double qc;               // heat flux, W/m^2
  double internal_energy;  // (1/alpha) int u dx + s/beta of the state used
};

/// (1/alpha) int_0^s u dx + s/beta, trapezoid on the field's grid.
double internal_energy(std::span<const double> u, double s,
                       const ThermalModel& model);
double internal_energy(const PlantState& st, const ThermalModel& model);
double internal_energy(const ObserverState& ob, const ThermalModel& model);

/// -c k (I/alpha + (s - sr)/beta) with I = int_0^s u dx.
ControlOutput feedback_law(std::span<const double> u, double s, double c,
                           double sr, const ThermalModel& model);

/// Full-state law on the true temperature and interface.
ControlOutput state_feedback(const PlantState& st, const ScenarioConfig& cfg,
                             const ThermalModel& model);

/// Same law evaluated on the estimate and the measured interface.
ControlOutput output_feedback(const ObserverState& ob, double y_now,
                              const ScenarioConfig& cfg,
                              const ThermalModel& model);

/// One logged step of the closed loop as seen by the qc ODE check.
struct QcSample {
  double t;
  double qc;
  double s;
  double err_flux;  // d(u - u_hat)/dx at the interface
};

// Differentiating the output-feedback law along the observer gives
//   qdot_c = -c qc + c k (1 + int_0^s P(x, s) dx) err_flux,
// and err_flux >= 0 under the observer restrictions, hence qdot_c >= -c qc.
struct QcOdeResidual {
  // residual_i = (qc_{i+1} - qc_i)/dt + c qc_i - c k (1 + int P) err_flux_i
  std::vector<double> residual;
  // margin_i = (qc_{i+1} - qc_i)/dt + c qc_i, >= 0 when qdot >= -c qc
  std::vector<double> margin;
  double min_margin;
  bool inequality_holds(double tol) const { return min_margin >= -tol; }
};

/// Slack for the forward-difference check of qdot_c >= -c qc:
/// c max|qc| (dxi^2 + c dt). The forward difference itself is off by about
/// (dt/2) c^2 qc.
double qc_inequality_tolerance(const ScenarioConfig& cfg, double max_abs_qc);

/// Throws std::invalid_argument for fewer than 3 samples.
QcOdeResidual qc_ode_residual(std::span<const QcSample> trace,
                              const ScenarioConfig& cfg,
                              const ThermalModel& model);

}  // namespace stefan
