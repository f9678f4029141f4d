#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace stefan {

/// Raised when a configuration value violates a hard precondition.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Material constants of the liquid phase. Temperatures in K, all SI.
struct PhysicalParams {
  double rho = 0.0;  // density, kg/m^3
  double cp = 0.0;   // heat capacity, J/(kg K)
  double k = 0.0;    // thermal conductivity, W/(m K)
  double dh = 0.0;   // latent heat of fusion, J/kg
  double tm = 0.0;   // melting temperature, K

  /// Throws ConfigError unless rho, cp, k and dh are strictly positive.
  void check() const;
};

/// Thermal diffusivity alpha = k/(rho cp) and Stefan coefficient
/// beta = k/(rho dh).
struct Diffusivities {
  double alpha;
  double beta;
};

Diffusivities derive_diffusivities(const PhysicalParams& p);

/// The three coefficients the dynamics actually use.
struct ThermalModel {
  double alpha;
  double beta;
  double k;

  static ThermalModel from(const PhysicalParams& p);
};

enum class ControlMode { OutputFeedback, StateFeedback };

const char* to_string(ControlMode mode);
ControlMode parse_control_mode(const std::string& text);

struct ScenarioConfig {
  ControlMode mode = ControlMode::OutputFeedback;
  double s0 = 0.0;      // initial interface position, m
  double H = 0.0;       // slope bound of the initial temperature, K/m
  double Hhat = 0.0;    // slope of the initial estimate, K/m
  double c = 0.0;       // controller gain, 1/s
  double lambda = 0.0;  // observer gain, 1/s
  double sr = 0.0;      // setpoint, m
  int grid_n = 0;       // grid intervals on [0, s]
  double dt = 0.0;      // time step, s
  double t_end = 0.0;   // horizon, s

  // Optional knobs.
  double ydot_smoothing = 0.0;  // EMA factor for the measured velocity, [0,1)
  int checkpoint_every = 50;    // steps between transform/Lyapunov samples
  bool h1_include_l2 = true;    // H1 norm = L2 + L2 of gradient
  double lyapunov_d = -1.0;     // weight of V1 in Vtot; <= 0 selects default
  double domain_length = 1.0;   // slab length; run aborts at 0.95 of it
};

/// Throws ConfigError on violated structural invariants (s0 > 0,
/// grid_n >= 8, dt > 0, t_end > dt, Hhat > H > 0, smoothing range).
void check_structure(const ScenarioConfig& cfg);

/// Observer gain ceiling (4 alpha / s0^2)(1 - H/Hhat). Requires Hhat > H.
double lambda_upper_bound(const ScenarioConfig& cfg, double alpha);

/// Setpoint floor s0 + beta s0^2 Hhat / (2 alpha).
double setpoint_lower_bound(const ScenarioConfig& cfg, double alpha,
                            double beta);

/// Setpoint floor from the energy balance for the linear initial profile
/// H (s0 - x): s0 + beta s0^2 H / (2 alpha).
double energy_setpoint_bound(const ScenarioConfig& cfg, double alpha,
                             double beta);

struct RestrictionCheck {
  std::string name;
  bool passed;
  double value;  // the configured quantity
  double bound;  // the threshold it is compared against
  std::string detail;
};

struct ValidationReport {
  std::vector<RestrictionCheck> checks;

  bool passed() const;
  /// Returns nullptr if no check with that name exists.
  const RestrictionCheck* find(const std::string& name) const;
  std::vector<std::string> failures() const;
  std::string to_text() const;
};

/// Evaluates every restriction the closed loop needs. Never throws; a
/// malformed parameter shows up as a failed check.
ValidationReport validate_scenario(const ScenarioConfig& cfg,
                                   const PhysicalParams& p);

/// Table values for zinc with the melting point of pure zinc.
PhysicalParams zinc();

/// The zinc scenario used throughout the tests and the bundled config.
ScenarioConfig zinc_scenario();

}  // namespace stefan
