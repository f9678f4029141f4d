// Scenario runner for the controlled one-phase Stefan problem.
//
//   stefanlab run <config> [--out-dir DIR] [--checkpoint-every K] [--fast]
//   stefanlab validate <config>
//   stefanlab compare <a.csv> <b.csv>
//   stefanlab sweep <config>... [--out-dir DIR]
//
// Exit codes: 0 success, 1 usage or I/O error, 2 invalid configuration,
// 3 numerical failure (partial trace still written).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include "CLI11.hpp"
#include "stefan/io.hpp"
#include "stefan/simulation.hpp"

namespace fs = std::filesystem;
using namespace stefan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

struct RunArgs {
  std::string out_dir = ".";
  int checkpoint_every = 0;
  bool fast = false;
};

// CI preset: coarser grid and time step, horizon unchanged.
void apply_fast(ScenarioConfig& cfg) {
  cfg.grid_n = std::max(8, cfg.grid_n / 2);
  cfg.dt *= 4.0;
  cfg.checkpoint_every = std::max(1, cfg.checkpoint_every / 4);
}

int run_one(const std::string& path, const RunArgs& args, std::ostream& log) {
  io::RunConfig rc;
  try {
    rc = io::load_config(path);
  } catch (const ConfigError& e) {
    log << path << ": " << e.what() << '\n';
    return kExitInvalid;
  }
  if (args.checkpoint_every > 0) rc.scenario.checkpoint_every = args.checkpoint_every;
  if (args.fast) apply_fast(rc.scenario);

  const auto res = run_closed_loop(rc.scenario, rc.physical);
  const std::string summary = io::summary_text(rc, res);
  if (res.status == RunStatus::InvalidConfig) {
    log << summary;
    return kExitInvalid;
  }

  fs::create_directories(args.out_dir);
  const fs::path base = fs::path(args.out_dir) / rc.name;
  {
    const auto report = diagnostics::monitor_constraints(
        res.trace.steps, rc.scenario.sr,
        diagnostics::grid_tolerance(rc.scenario.grid_n, rc.scenario.dt));
    std::ofstream trace(base.string() + "_trace.csv");
    io::write_trace_csv(trace, res.trace, report, rc.physical.tm);
    std::ofstream cps(base.string() + "_checkpoints.csv");
    io::write_checkpoint_csv(cps, res.trace);
    std::ofstream sum(base.string() + "_summary.txt");
    sum << summary;
    if (!trace || !cps || !sum) {
      log << "failed to write artifacts under " << args.out_dir << '\n';
      return kExitError;
    }
  }
  log << summary;
  return res.status == RunStatus::Ok ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary control and observer lab for the one-phase Stefan problem"};
  app.require_subcommand(1);

  RunArgs run_args;
  std::string run_cfg;
  auto* run = app.add_subcommand("run", "Run a closed-loop scenario");
  run->add_option("config", run_cfg, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--out-dir", run_args.out_dir, "Directory for trace/summary files");
  run->add_option("--checkpoint-every", run_args.checkpoint_every,
                  "Steps between transform/Lyapunov samples (overrides config)");
  run->add_flag("--fast", run_args.fast, "Coarse CI preset");

  std::string validate_cfg;
  auto* validate = app.add_subcommand("validate", "Check a scenario's restrictions");
  validate->add_option("config", validate_cfg, "Scenario file")->required();

  std::string cmp_a, cmp_b;
  auto* compare = app.add_subcommand("compare", "Column-wise max |a - b| of two traces");
  compare->add_option("a", cmp_a)->required();
  compare->add_option("b", cmp_b)->required();

  std::vector<std::string> sweep_cfgs;
  RunArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Run several scenarios concurrently");
  sweep->add_option("configs", sweep_cfgs)->required()->expected(1, -1);
  sweep->add_option("--out-dir", sweep_args.out_dir);
  sweep->add_flag("--fast", sweep_args.fast);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  if (*run) return run_one(run_cfg, run_args, std::cout);

  if (*validate) {
    try {
      const auto rc = io::load_config(validate_cfg);
      const auto rep = validate_scenario(rc.scenario, rc.physical);
      std::cout << rep.to_text();
      return rep.passed() ? kExitOk : kExitInvalid;
    } catch (const ConfigError& e) {
      std::cerr << validate_cfg << ": " << e.what() << '\n';
      return kExitInvalid;
    }
  }

  if (*compare) {
    try {
      for (const auto& d : io::compare_trace_files(cmp_a, cmp_b))
        std::cout << d.column << ' ' << io::format_double(d.max_abs_diff) << '\n';
      return kExitOk;
    } catch (const std::exception& e) {
      std::cerr << "compare: " << e.what() << '\n';
      return kExitError;
    }
  }

  if (*sweep) {
    std::vector<std::future<std::pair<int, std::string>>> jobs;
    for (const auto& path : sweep_cfgs)
      jobs.push_back(std::async(std::launch::async, [path, &sweep_args] {
        std::ostringstream log;
        const int code = run_one(path, sweep_args, log);
        return std::make_pair(code, log.str());
      }));
    int worst = kExitOk;
    for (size_t i = 0; i < jobs.size(); ++i) {
      auto [code, text] = jobs[i].get();
      std::cout << "== " << sweep_cfgs[i] << " (exit " << code << ")\n" << text;
      worst = std::max(worst, code);
    }
    return worst;
  }
  return kExitError;
}
