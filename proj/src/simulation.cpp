#include "stefan/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "stefan/control.hpp"
#include "stefan/grid.hpp"
#include "stefan/observer.hpp"
#include "stefan/plant.hpp"
#include "stefan/transforms.hpp"

namespace stefan {

namespace {

StepRecord record_step(const PlantState& plant, const ObserverState& ob,
                       double qc, const ThermalModel& model, bool include_l2) {
  StepRecord r;
  r.t = plant.t;
  r.s = plant.s;
  r.sdot = plant.sdot;
  r.qc = qc;
  r.cfl = plant.cfl;
  r.u0 = plant.theta.front();
  r.uhat0 = ob.theta_hat.front();

  // Y = s in closed loop, so both fields share the grid; resample only if an
  // external measurement ever made them differ.
  Field uhat = ob.y_prev == plant.s
                   ? ob.theta_hat
                   : grid::resample(ob.theta_hat, ob.y_prev, plant.s);
  Field err(plant.theta.size());
  for (size_t i = 0; i < err.size(); ++i) err[i] = plant.theta[i] - uhat[i];

  r.min_u = *std::min_element(plant.theta.begin(), plant.theta.end());
  r.max_err = *std::max_element(err.begin(), err.end() - 1);
  r.err_flux = grid::interface_derivative(err, plant.s);
  r.h1_u = diagnostics::h1_norm_sq(plant.theta, plant.s, include_l2);
  r.h1_err = diagnostics::h1_norm_sq(err, plant.s, include_l2);
  r.energy = internal_energy(plant, model);
  return r;
}

double relative_sup(std::span<const double> a, std::span<const double> b) {
  double num = 0.0;
  for (size_t i = 0; i < a.size(); ++i) num = std::max(num, std::fabs(a[i] - b[i]));
  const double den = grid::max_abs(b);
  return den > 0.0 ? num / den : num;
}

CheckpointRecord checkpoint(size_t step, const PlantState& plant,
                            const ObserverState& ob, const ScenarioConfig& cfg,
                            const ThermalModel& model,
                            const diagnostics::LyapunovConstants& k) {
  CheckpointRecord c;
  c.step = step;
  c.t = plant.t;
  c.s = plant.s;
  c.X = plant.s - cfg.sr;
  const double s = ob.y_prev;
  Field err(plant.theta.size());
  for (size_t i = 0; i < err.size(); ++i) err[i] = plant.theta[i] - ob.theta_hat[i];

  const Field w_hat = transforms::controller_transform(ob.theta_hat, c.X, s, cfg.c,
                                                       model.alpha, model.beta);
  transforms::KernelField q(transforms::KernelKind::Q, cfg.grid_n, s, cfg.lambda,
                            model.alpha);
  transforms::KernelField p(transforms::KernelKind::P, cfg.grid_n, s, cfg.lambda,
                            model.alpha);
  const Field w_tilde = q.apply(err, -1.0);

  const auto ly = diagnostics::lyapunov_sample(w_hat, w_tilde, s, c.X, k,
                                               cfg.h1_include_l2);
  c.V1 = ly.V1;
  c.Vtot = ly.Vtot;
  c.V = ly.V;
  c.max_wtilde = *std::max_element(w_tilde.begin(), w_tilde.end() - 1);
  c.what_at_s = w_hat.back();
  c.what_x0 = grid::gradient(w_hat, s).front();

  c.roundtrip_pq = relative_sup(p.apply(w_tilde, +1.0), err);
  const Field back = transforms::controller_inverse(w_hat, c.X, s, cfg.c,
                                                    model.alpha, model.beta);
  c.roundtrip_ctrl = relative_sup(back, ob.theta_hat);
  return c;
}

}  // namespace

SimulationResult run_closed_loop(const ScenarioConfig& cfg,
                                 const PhysicalParams& params,
                                 const RunOptions& options) {
  SimulationResult res;
  res.validation = validate_scenario(cfg, params);
  if (options.validate && !res.validation.passed()) {
    res.status = RunStatus::InvalidConfig;
    res.error = "validation failed";
    return res;
  }
  try {
    check_structure(cfg);
  } catch (const ConfigError& e) {
    res.status = RunStatus::InvalidConfig;
    res.error = e.what();
    return res;
  }

  const ThermalModel model = ThermalModel::from(params);
  res.constants = diagnostics::lyapunov_constants(cfg, model);
  const ObserverGains gains{cfg.lambda, cfg.ydot_smoothing};
  const auto steps = static_cast<size_t>(std::llround(cfg.t_end / cfg.dt));

  PlantState plant = init_plant(cfg, model);
  ObserverState ob = init_observer(cfg, model);
  auto law = [&](const PlantState& pl, const ObserverState& o) {
    return cfg.mode == ControlMode::StateFeedback
               ? state_feedback(pl, cfg, model).qc
               : output_feedback(o, pl.s, cfg, model).qc;
  };

  auto& trace = res.trace;
  trace.steps.reserve(steps + 1);
  double qc = law(plant, ob);
  try {
    for (size_t i = 0;; ++i) {
      trace.steps.push_back(record_step(plant, ob, qc, model, cfg.h1_include_l2));
      if (plant.cfl > 0.5) ++res.cfl_warnings;
      if (options.checkpoints &&
          (i % static_cast<size_t>(cfg.checkpoint_every) == 0 || i == steps))
        trace.checkpoints.push_back(checkpoint(i, plant, ob, cfg, model, res.constants));
      if (i == steps) break;

      plant = step_plant(plant, qc, cfg.dt, model, cfg.domain_length);
      plant.t = static_cast<double>(i + 1) * cfg.dt;
      ob = step_observer(ob, plant.s, qc, cfg.dt, model, gains);
      ob.t = plant.t;
      qc = law(plant, ob);
    }
  } catch (const SimulationError& e) {
    res.status = RunStatus::NumericalFailure;
    res.error = e.what();
  } catch (const std::domain_error& e) {
    res.status = RunStatus::NumericalFailure;
    res.error = e.what();
  }
  return res;
}

EnergyBalance energy_balance(const Trace& trace, const ThermalModel& model) {
  EnergyBalance eb{};
  const auto& st = trace.steps;
  if (st.size() < 2) return eb;
  eb.delta_energy = st.back().energy - st.front().energy;
  double supplied = 0.0;
  for (size_t i = 0; i + 1 < st.size(); ++i)
    supplied += st[i].qc * (st[i + 1].t - st[i].t);
  eb.supplied = supplied / model.k;
  eb.relative_residual =
      std::fabs(eb.delta_energy - eb.supplied) / std::fabs(eb.delta_energy);
  return eb;
}

}  // namespace stefan
