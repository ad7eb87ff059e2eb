// fairsim: batch runner and diagnostics for the allocation policies.
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fairalloc/errors.hpp"
#include "fairalloc/experiment/config.hpp"
#include "fairalloc/experiment/plot_data.hpp"
#include "fairalloc/experiment/runner.hpp"
#include "fairalloc/lp/lp_core.hpp"
#include "fairalloc/market/environment.hpp"
#include "fairalloc/oracle/oracles.hpp"

namespace {

using namespace fairalloc;

constexpr int kOk = 0;
constexpr int kInputFailure = 1;
constexpr int kSolverFailure = 2;

std::string one_based(const std::vector<std::size_t>& idx) {
  std::string s = "{";
  for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? "," : "") + std::to_string(idx[k] + 1);
  return s + "}";
}

std::string vec(const Eigen::VectorXd& v) {
  std::string s = "[";
  for (Eigen::Index k = 0; k < v.size(); ++k) s += (k ? ", " : "") + experiment::format_number(v[k]);
  return s + "]";
}

int check_assumptions(const std::string& source) {
  const market::Environment env = experiment::resolve_environment(source);
  const lp::PackedLP dlp = market::build_dlp(env);
  const lp::OptimalFace face = lp::analyze_optimal_face(dlp);
  const lp::LPSolution center = lp::analytic_center(dlp, face);
  const lp::BindingSet binding = lp::binding_set(dlp, center);
  const lp::DualPoint dual = lp::interior_dual(dlp, face);

  std::cout << "env            " << env.id << "\n"
            << "OPT_D          " << experiment::format_number(face.opt_value) << "\n"
            << "y*             " << vec(center.y) << "\n"
            << "lambda         " << vec(dual.lambda) << "\n"
            << "binding        " << one_based(binding.binding) << "\n"
            << "nonbinding     " << one_based(binding.nonbinding) << "\n"
            << "fixed at 0     " << one_based(face.implicit.fixed_at_zero) << "\n"
            << "fixed at 1     " << one_based(face.implicit.fixed_at_upper) << "\n";
  const auto report = oracle::check_dual_nondegeneracy(dlp, binding.binding);
  if (report.holds) {
    std::cout << "nondegenerate  yes (every optimal dual vertex prices every binding resource)\n";
  } else {
    std::cout << "nondegenerate  NO: lambda = " << vec(*report.witness_lambda) << " is ~0 on binding resource "
              << (*report.witness_row + 1) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online fair resource allocation simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int threads = 1;
  bool dump = false, record_runtime = false;
  auto* run_cmd = app.add_subcommand("run", "Run a config-driven sweep and write CSV results");
  run_cmd->add_option("--config", config_path, "JSON experiment config")->required();
  run_cmd->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  run_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--dump-trajectories", dump, "Write one CSV per episode");
  run_cmd->add_flag("--record-runtime", record_runtime, "Put wall-clock times in summary.csv");

  std::string plot_in, plot_out;
  auto* plot_cmd = app.add_subcommand("plot-data", "Emit per-figure data files from a run directory");
  plot_cmd->add_option("--in", plot_in, "Run output directory")->required();
  plot_cmd->add_option("--out", plot_out, "Destination directory")->required();

  std::string env_source;
  auto* check_cmd = app.add_subcommand("check-assumptions", "Print the DLP binding set and test dual nondegeneracy");
  check_cmd->add_option("--env", env_source, "Preset name or JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      const auto cfg = experiment::load_config(config_path);
      experiment::RunOptions opts;
      if (!out_dir.empty()) opts.output_dir = out_dir;
      opts.threads = threads;
      opts.dump_trajectories = dump;
      opts.record_runtime = record_runtime;
      const auto result = experiment::run(cfg, opts);
      for (const auto& a : result.aggregates) {
        std::printf("%-4s %-18s T=%-6ld regret %10.4f (se %.4f)  UF %10.4f (se %.4f)\n", a.env.c_str(),
                    a.policy.c_str(), a.horizon, a.mean_regret, a.se_regret, a.mean_cumulative_unfairness,
                    a.se_cumulative_unfairness);
      }
      std::cout << "wrote " << result.output_dir << "\n";
    } else if (*plot_cmd) {
      for (const auto& path : experiment::emit_plot_data(plot_in, plot_out)) std::cout << path << "\n";
    } else if (*check_cmd) {
      return check_assumptions(env_source);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputFailure;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  }
  return kOk;
}
