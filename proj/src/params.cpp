#include "stefan/params.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace stefan {

namespace {

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void PhysicalParams::check() const {
  if (!positive(rho)) throw ConfigError("density must be positive");
  if (!positive(cp)) throw ConfigError("heat capacity must be positive");
  if (!positive(k)) throw ConfigError("thermal conductivity must be positive");
  if (!positive(dh)) throw ConfigError("latent heat must be positive");
  if (!std::isfinite(tm)) throw ConfigError("melting temperature must be finite");
}

Diffusivities derive_diffusivities(const PhysicalParams& p) {
  p.check();
  return {p.k / (p.rho * p.cp), p.k / (p.rho * p.dh)};
}

ThermalModel ThermalModel::from(const PhysicalParams& p) {
  const auto d = derive_diffusivities(p);
  return {d.alpha, d.beta, p.k};
}

const char* to_string(ControlMode mode) {
  return mode == ControlMode::StateFeedback ? "state_feedback"
                                            : "output_feedback";
}

ControlMode parse_control_mode(const std::string& text) {
  if (text == "output_feedback") return ControlMode::OutputFeedback;
  if (text == "state_feedback") return ControlMode::StateFeedback;
  throw ConfigError("unknown control mode '" + text + "'");
}

void check_structure(const ScenarioConfig& cfg) {
  if (!positive(cfg.s0)) throw ConfigError("s0 must be positive");
  if (cfg.grid_n < 8) throw ConfigError("grid_n must be at least 8");
  if (!positive(cfg.dt)) throw ConfigError("dt must be positive");
  if (!(cfg.t_end > cfg.dt)) throw ConfigError("t_end must exceed dt");
  if (!positive(cfg.H)) throw ConfigError("H must be positive");
  if (!positive(cfg.Hhat)) throw ConfigError("Hhat must be positive");
  if (!(cfg.ydot_smoothing >= 0.0 && cfg.ydot_smoothing < 1.0))
    throw ConfigError("ydot_smoothing must lie in [0, 1)");
  if (cfg.checkpoint_every < 1)
    throw ConfigError("checkpoint_every must be at least 1");
  if (!positive(cfg.domain_length))
    throw ConfigError("domain_length must be positive");
}

double lambda_upper_bound(const ScenarioConfig& cfg, double alpha) {
  if (!(cfg.Hhat > cfg.H))
    throw ConfigError("lambda bound requires Hhat > H");
  if (!positive(cfg.s0)) throw ConfigError("s0 must be positive");
  return 4.0 * alpha / (cfg.s0 * cfg.s0) * (1.0 - cfg.H / cfg.Hhat);
}

double setpoint_lower_bound(const ScenarioConfig& cfg, double alpha,
                            double beta) {
  return cfg.s0 + beta * cfg.s0 * cfg.s0 * cfg.Hhat / (2.0 * alpha);
}

double energy_setpoint_bound(const ScenarioConfig& cfg, double alpha,
                             double beta) {
  return cfg.s0 + beta * cfg.s0 * cfg.s0 * cfg.H / (2.0 * alpha);
}

bool ValidationReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const RestrictionCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<std::string> ValidationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(c.name);
  return out;
}

std::string ValidationReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << ": value=" << fmt(c.value)
       << " bound=" << fmt(c.bound);
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << '\n';
  }
  os << (passed() ? "validation passed\n" : "validation failed\n");
  return os.str();
}

ValidationReport validate_scenario(const ScenarioConfig& cfg,
                                   const PhysicalParams& p) {
  ValidationReport rep;
  auto add = [&rep](std::string name, bool ok, double value, double bound,
                    std::string detail = {}) {
    rep.checks.push_back({std::move(name), ok, value, bound, std::move(detail)});
  };

  Diffusivities d{0.0, 0.0};
  try {
    d = derive_diffusivities(p);
    add("physical_params", true, d.alpha, 0.0, "alpha; beta=" + fmt(d.beta));
  } catch (const ConfigError& e) {
    add("physical_params", false, 0.0, 0.0, e.what());
  }

  try {
    check_structure(cfg);
    add("numerics", true, cfg.dt, 0.0, "dt; grid_n=" + std::to_string(cfg.grid_n));
  } catch (const ConfigError& e) {
    add("numerics", false, 0.0, 0.0, e.what());
  }

  // The initial estimate is always the linear profile Hhat (s0 - x); what
  // can go wrong is its slope relative to the plant bound.
  add("initial_estimate_shape", positive(cfg.Hhat), cfg.Hhat, 0.0,
      "estimate = Hhat (s0 - x)");
  add("hhat_exceeds_h", cfg.Hhat > cfg.H && cfg.H > 0.0, cfg.Hhat, cfg.H);
  add("controller_gain", positive(cfg.c), cfg.c, 0.0);

  const bool have_d = d.alpha > 0.0 && d.beta > 0.0;
  if (have_d && cfg.Hhat > cfg.H && positive(cfg.s0)) {
    const double lb = lambda_upper_bound(cfg, d.alpha);
    add("lambda_bound", cfg.lambda > 0.0 && cfg.lambda < lb, cfg.lambda, lb,
        "0 < lambda < (4 alpha/s0^2)(1 - H/Hhat)");
  } else {
    add("lambda_bound", false, cfg.lambda, 0.0, "bound undefined");
  }

  if (have_d) {
    const double sb = setpoint_lower_bound(cfg, d.alpha, d.beta);
    add("setpoint_bound", cfg.sr > sb, cfg.sr, sb,
        "sr > s0 + beta s0^2 Hhat/(2 alpha)");
    if (cfg.sr >= 0.95 * cfg.domain_length)
      add("domain_length", false, cfg.sr, 0.95 * cfg.domain_length,
          "setpoint beyond 0.95 of the slab");
  } else {
    add("setpoint_bound", false, cfg.sr, 0.0, "bound undefined");
  }
  return rep;
}

PhysicalParams zinc() {
  PhysicalParams p;
  p.rho = 6570.0;
  p.cp = 389.5687;
  p.k = 116.0;
  p.dh = 111961.0;
  p.tm = 692.68;
  return p;
}

ScenarioConfig zinc_scenario() {
  ScenarioConfig cfg;
  cfg.mode = ControlMode::OutputFeedback;
  cfg.s0 = 0.01;
  cfg.H = 100.0;
  cfg.Hhat = 1000.0;
  cfg.c = 0.001;
  cfg.lambda = 0.001;
  cfg.sr = 0.35;
  cfg.grid_n = 200;
  cfg.dt = 0.1;
  cfg.t_end = 12000.0;
  return cfg;
}

}  // namespace stefan
