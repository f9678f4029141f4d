#pragma once

#include <vector>

namespace stefan {

/// Everything the monitors need from one time level of the closed loop.
struct StepRecord {
  double t = 0.0;
  double s = 0.0;
  double sdot = 0.0;
  double qc = 0.0;        // flux applied from this time level onward
  double u0 = 0.0;        // T(0,t) - Tm
  double uhat0 = 0.0;     // That(0,t) - Tm
  double min_u = 0.0;     // min over nodes of T - Tm
  double max_err = 0.0;   // max over interior nodes of T - That
  double err_flux = 0.0;  // d(T - That)/dx at the interface
  double h1_u = 0.0;      // ||T - Tm||^2_H1
  double h1_err = 0.0;    // ||T - That||^2_H1
  double energy = 0.0;    // (1/alpha) int u dx + s/beta of the plant
  double cfl = 0.0;
};

/// Transform-level diagnostics, sampled every few steps.
struct CheckpointRecord {
  size_t step = 0;
  double t = 0.0;
  double s = 0.0;
  double X = 0.0;           // s - sr
  double V1 = 0.0;          // 1/2 ||w_tilde||^2_H1
  double Vtot = 0.0;
  double V = 0.0;           // Vtot exp(-a s)
  double max_wtilde = 0.0;  // max of the transformed estimation error
  double what_at_s = 0.0;   // controller target at the interface
  double what_x0 = 0.0;     // d(w_hat)/dx at x = 0
  double roundtrip_pq = 0.0;    // relative sup error of inverse(direct(.))
  double roundtrip_ctrl = 0.0;  // same for the controller pair
};

struct Trace {
  std::vector<StepRecord> steps;
  std::vector<CheckpointRecord> checkpoints;
};

}  // namespace stefan
