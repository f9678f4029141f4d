#include "stefan/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "stefan/control.hpp"

namespace stefan::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': not a number: '" + v + "'");
  }
  if (used != v.size())
    throw ConfigError("key '" + key + "': trailing characters in '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x != std::floor(x)) throw ConfigError("key '" + key + "': not an integer");
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key '" + key + "': not a boolean: '" + v + "'");
}

const std::map<std::string, std::set<std::string>>& mandatory_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"physical", {"rho", "cp", "k", "dh", "tm"}},
      {"scenario", {"mode", "s0", "H", "Hhat", "c", "lambda", "sr"}},
      {"numerics", {"grid_n", "dt", "t_end"}},
      {"output", {"name"}},
  };
  return keys;
}

const std::set<std::string>& optional_numerics() {
  static const std::set<std::string> keys = {
      "ydot_smoothing", "checkpoint_every", "h1_include_l2", "lyapunov_d",
      "domain_length"};
  return keys;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  std::map<std::string, std::map<std::string, std::string>> values;
  std::string section, line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!mandatory_keys().count(section))
        throw ConfigError("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key outside a section");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    const bool known = mandatory_keys().at(section).count(key) ||
                       (section == "numerics" && optional_numerics().count(key));
    if (!known) throw ConfigError("unknown key '" + key + "' in [" + section + "]");
    if (values[section].count(key))
      throw ConfigError("duplicate key '" + key + "' in [" + section + "]");
    values[section][key] = val;
  }

  for (const auto& [sec, keys] : mandatory_keys())
    for (const auto& key : keys)
      if (!values[sec].count(key))
        throw ConfigError("missing key '" + key + "' in [" + sec + "]");

  RunConfig rc;
  auto& ph = values["physical"];
  rc.physical.rho = to_double("rho", ph["rho"]);
  rc.physical.cp = to_double("cp", ph["cp"]);
  rc.physical.k = to_double("k", ph["k"]);
  rc.physical.dh = to_double("dh", ph["dh"]);
  rc.physical.tm = to_double("tm", ph["tm"]);

  auto& sc = values["scenario"];
  auto& cfg = rc.scenario;
  cfg.mode = parse_control_mode(sc["mode"]);
  cfg.s0 = to_double("s0", sc["s0"]);
  cfg.H = to_double("H", sc["H"]);
  cfg.Hhat = to_double("Hhat", sc["Hhat"]);
  cfg.c = to_double("c", sc["c"]);
  cfg.lambda = to_double("lambda", sc["lambda"]);
  cfg.sr = to_double("sr", sc["sr"]);

  auto& nu = values["numerics"];
  cfg.grid_n = to_int("grid_n", nu["grid_n"]);
  cfg.dt = to_double("dt", nu["dt"]);
  cfg.t_end = to_double("t_end", nu["t_end"]);
  if (nu.count("ydot_smoothing"))
    cfg.ydot_smoothing = to_double("ydot_smoothing", nu["ydot_smoothing"]);
  if (nu.count("checkpoint_every"))
    cfg.checkpoint_every = to_int("checkpoint_every", nu["checkpoint_every"]);
  if (nu.count("h1_include_l2"))
    cfg.h1_include_l2 = to_bool("h1_include_l2", nu["h1_include_l2"]);
  if (nu.count("lyapunov_d")) cfg.lyapunov_d = to_double("lyapunov_d", nu["lyapunov_d"]);
  if (nu.count("domain_length"))
    cfg.domain_length = to_double("domain_length", nu["domain_length"]);

  rc.name = values["output"]["name"];
  if (rc.name.empty()) throw ConfigError("output name must not be empty");
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(in);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_config(std::ostream& out, const RunConfig& rc) {
  const auto& p = rc.physical;
  const auto& c = rc.scenario;
  out << "[physical]\n"
      << "rho = " << format_double(p.rho) << "\ncp = " << format_double(p.cp)
      << "\nk = " << format_double(p.k) << "\ndh = " << format_double(p.dh)
      << "\ntm = " << format_double(p.tm) << "\n\n[scenario]\n"
      << "mode = " << to_string(c.mode) << "\ns0 = " << format_double(c.s0)
      << "\nH = " << format_double(c.H) << "\nHhat = " << format_double(c.Hhat)
      << "\nc = " << format_double(c.c) << "\nlambda = " << format_double(c.lambda)
      << "\nsr = " << format_double(c.sr) << "\n\n[numerics]\n"
      << "grid_n = " << c.grid_n << "\ndt = " << format_double(c.dt)
      << "\nt_end = " << format_double(c.t_end)
      << "\nydot_smoothing = " << format_double(c.ydot_smoothing)
      << "\ncheckpoint_every = " << c.checkpoint_every
      << "\nh1_include_l2 = " << (c.h1_include_l2 ? "true" : "false")
      << "\nlyapunov_d = " << format_double(c.lyapunov_d)
      << "\ndomain_length = " << format_double(c.domain_length)
      << "\n\n[output]\nname = " << rc.name << "\n";
}

const std::vector<std::string>& trace_columns() {
  static const std::vector<std::string> cols = {
      "t",      "s",     "qc",     "T0",     "That0",
      "Ttilde0", "h1_u", "h1_err", "energy", "V",
      "Vtot",   "qc_positive", "s_increasing", "s_below_sr",
      "u_nonnegative", "error_nonpositive"};
  return cols;
}

void write_trace_csv(std::ostream& out, const Trace& trace,
                     const diagnostics::ConstraintReport& report, double tm) {
  out << "# stefanlab trace\n";
  const auto& cols = trace_columns();
  for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& cp : trace.checkpoints) {
    const auto& r = trace.steps.at(cp.step);
    const auto& f = report.flags.at(cp.step);
    const double T0 = tm + r.u0, That0 = tm + r.uhat0;
    out << format_double(r.t) << ',' << format_double(r.s) << ','
        << format_double(r.qc) << ',' << format_double(T0) << ','
        << format_double(That0) << ',' << format_double(r.u0 - r.uhat0) << ','
        << format_double(r.h1_u) << ',' << format_double(r.h1_err) << ','
        << format_double(r.energy) << ',' << format_double(cp.V) << ','
        << format_double(cp.Vtot) << ',' << f.qc_positive << ','
        << f.s_increasing << ',' << f.s_below_sr << ',' << f.u_nonnegative
        << ',' << f.error_nonpositive << '\n';
  }
}

void write_checkpoint_csv(std::ostream& out, const Trace& trace) {
  out << "# stefanlab transform diagnostics\n"
      << "t,s,X,V1,Vtot,V,max_wtilde,what_at_s,what_x0,roundtrip_pq,roundtrip_ctrl\n";
  for (const auto& c : trace.checkpoints) {
    out << format_double(c.t) << ',' << format_double(c.s) << ','
        << format_double(c.X) << ',' << format_double(c.V1) << ','
        << format_double(c.Vtot) << ',' << format_double(c.V) << ','
        << format_double(c.max_wtilde) << ',' << format_double(c.what_at_s) << ','
        << format_double(c.what_x0) << ',' << format_double(c.roundtrip_pq) << ','
        << format_double(c.roundtrip_ctrl) << '\n';
  }
}

std::vector<ColumnDiff> compare_traces(std::istream& a, std::istream& b) {
  auto read = [](std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      rows.push_back(split_csv(line));
    }
    return rows;
  };
  const auto ra = read(a), rb = read(b);
  if (ra.empty() || rb.empty()) throw SchemaError("missing header row");
  if (ra[0] != rb[0]) throw SchemaError("column headers differ");
  if (ra.size() != rb.size())
    throw SchemaError("row counts differ: " + std::to_string(ra.size() - 1) +
                      " vs " + std::to_string(rb.size() - 1));
  const auto& header = ra[0];
  std::vector<ColumnDiff> out;
  for (const auto& h : header) out.push_back({h, 0.0});
  for (size_t r = 1; r < ra.size(); ++r) {
    if (ra[r].size() != header.size() || rb[r].size() != header.size())
      throw SchemaError("row " + std::to_string(r) + " has the wrong column count");
    for (size_t c = 0; c < header.size(); ++c) {
      const double x = std::stod(ra[r][c]), y = std::stod(rb[r][c]);
      out[c].max_abs_diff = std::max(out[c].max_abs_diff, std::fabs(x - y));
    }
  }
  return out;
}

std::vector<ColumnDiff> compare_trace_files(const std::string& a,
                                            const std::string& b) {
  std::ifstream fa(a), fb(b);
  if (!fa) throw SchemaError("cannot open '" + a + "'");
  if (!fb) throw SchemaError("cannot open '" + b + "'");
  return compare_traces(fa, fb);
}

std::string summary_text(const RunConfig& rc, const SimulationResult& res) {
  std::ostringstream os;
  char buf[256];
  const auto& cfg = rc.scenario;
  os << "scenario: " << rc.name << " (" << to_string(cfg.mode) << ")\n\n";
  os << "validation\n" << res.validation.to_text() << '\n';
  if (res.status == RunStatus::InvalidConfig) return os.str();

  const ThermalModel model = ThermalModel::from(rc.physical);
  const auto& k = res.constants;
  std::snprintf(buf, sizeof buf,
                "alpha=%.6e beta=%.6e\nlyapunov constants: p=%.6g a=%.6g b=%.6g d=%.6g\n",
                model.alpha, model.beta, k.p, k.a, k.b, k.d);
  os << buf;

  const auto& steps = res.trace.steps;
  if (res.status == RunStatus::NumericalFailure)
    os << "RUN FAILED: " << res.error << '\n';
  if (steps.empty()) return os.str();

  const auto report = diagnostics::monitor_constraints(
      steps, cfg.sr, diagnostics::grid_tolerance(cfg.grid_n, cfg.dt));
  os << '\n' << report.to_text();

  const auto& last = steps.back();
  std::snprintf(buf, sizeof buf,
                "\nfinal: t=%.6g s=%.10g (sr=%.6g) qc=%.6g Ttilde0=%.6g\n",
                last.t, last.s, cfg.sr, last.qc, last.u0 - last.uhat0);
  os << buf;
  if (steps.size() > 1) {
    const auto eb = energy_balance(res.trace, model);
    std::snprintf(buf, sizeof buf,
                  "energy: dE=%.10g supplied=%.10g relative residual=%.3e\n",
                  eb.delta_energy, eb.supplied, eb.relative_residual);
    os << buf;
  }
  if (steps.size() >= 3) {
    std::vector<QcSample> qs;
    qs.reserve(steps.size());
    for (const auto& r : steps) qs.push_back({r.t, r.qc, r.s, r.err_flux});
    const auto ode = qc_ode_residual(qs, cfg, model);
    double max_qc = 0.0;
    for (const auto& r : steps) max_qc = std::max(max_qc, std::fabs(r.qc));
    const double tol = qc_inequality_tolerance(cfg, max_qc);
    std::snprintf(buf, sizeof buf,
                  "qc inequality qdot >= -c qc: %s (min margin %.6e, tolerance %.3e)\n",
                  ode.inequality_holds(tol) ? "PASS" : "FAIL", ode.min_margin, tol);
    os << buf;
  }

  std::vector<double> t, e;
  for (const auto& r : steps) {
    t.push_back(r.t);
    e.push_back(r.h1_err);
  }
  try {
    std::snprintf(buf, sizeof buf,
                  "H1 estimation error decay rate: %.6e 1/s (samples above %.0e of "
                  "the initial value)\n",
                  diagnostics::fit_decay_rate_above_floor(t, e), diagnostics::kDecayFloor);
    os << buf;
  } catch (const std::invalid_argument&) {
    os << "H1 estimation error decay rate: not enough samples above the floor\n";
  }
  if (!res.trace.checkpoints.empty()) {
    double worst_pq = 0.0, worst_ctrl = 0.0;
    for (const auto& c : res.trace.checkpoints) {
      worst_pq = std::max(worst_pq, c.roundtrip_pq);
      worst_ctrl = std::max(worst_ctrl, c.roundtrip_ctrl);
    }
    std::snprintf(buf, sizeof buf,
                  "transform round trips: P/Q %.3e, controller %.3e (worst)\n",
                  worst_pq, worst_ctrl);
    os << buf;
  }
  if (res.cfl_warnings > 0) {
    std::snprintf(buf, sizeof buf,
                  "warning: convective CFL above 0.5 on %d steps\n",
                  res.cfl_warnings);
    os << buf;
  }
  return os.str();
}

}  // namespace stefan::io
