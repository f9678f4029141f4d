#pragma once

#include <optional>
#include <string>

#include "stefan/diagnostics.hpp"
#include "stefan/params.hpp"
#include "stefan/trace.hpp"

namespace stefan {

enum class RunStatus { Ok, InvalidConfig, NumericalFailure };

struct SimulationResult {
  RunStatus status = RunStatus::Ok;
  ValidationReport validation;
  std::string error;  // set when status != Ok
  Trace trace;        // partial on numerical failure
  diagnostics::LyapunovConstants constants{};
  int cfl_warnings = 0;  // steps with convective CFL > 0.5
};

struct RunOptions {
  bool validate = true;     // refuse to start on a failed validation
  bool checkpoints = true;  // compute transform/Lyapunov samples
};

/// Closed loop. At each time level t_i the observer has already assimilated
/// Y(t_i) = s(t_i); qc_i is computed from it (or from the plant in
/// state-feedback mode) and held over [t_i, t_{i+1}] for both plant and
/// observer. One StepRecord per time level, t_0 .. t_M with M = round(t_end/dt).
SimulationResult run_closed_loop(const ScenarioConfig& cfg,
                                 const PhysicalParams& params,
                                 const RunOptions& options = {});

struct EnergyBalance {
  double delta_energy;     // E(t_M) - E(t_0)
  double supplied;         // (1/k) sum_i qc_i dt over the run
  double relative_residual;
};

EnergyBalance energy_balance(const Trace& trace, const ThermalModel& model);

}  // namespace stefan
