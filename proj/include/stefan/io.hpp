#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stefan/diagnostics.hpp"
#include "stefan/params.hpp"
#include "stefan/simulation.hpp"

namespace stefan::io {

/// A parsed scenario file:
///
///   [physical]  rho cp k dh tm
///   [scenario]  mode s0 H Hhat c lambda sr
///   [numerics]  grid_n dt t_end
///               (optional) ydot_smoothing checkpoint_every h1_include_l2
///                          lyapunov_d domain_length
///   [output]    name
///
/// `key = value` per line; '#' and ';' start comments.
struct RunConfig {
  PhysicalParams physical;
  ScenarioConfig scenario;
  std::string name;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);
void write_config(std::ostream& out, const RunConfig& rc);

/// Prints with 17 significant digits so traces round-trip exactly.
std::string format_double(double v);

/// Column names of the trace CSV, in order.
const std::vector<std::string>& trace_columns();

/// One row per checkpoint: t, s, qc, T0, That0, Ttilde0, h1_u, h1_err,
/// energy, V, Vtot, then the five constraint flags as 0/1.
void write_trace_csv(std::ostream& out, const Trace& trace,
                     const diagnostics::ConstraintReport& report, double tm);

/// Transform diagnostics per checkpoint.
void write_checkpoint_csv(std::ostream& out, const Trace& trace);

struct ColumnDiff {
  std::string column;
  double max_abs_diff;
};

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Column-wise max |a - b|. Lines starting with '#' are ignored. Throws
/// SchemaError when headers or row counts differ.
std::vector<ColumnDiff> compare_traces(std::istream& a, std::istream& b);
std::vector<ColumnDiff> compare_trace_files(const std::string& a,
                                            const std::string& b);

/// Human-readable run summary.
std::string summary_text(const RunConfig& rc, const SimulationResult& res);

}  // namespace stefan::io
