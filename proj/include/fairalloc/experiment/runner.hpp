#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fairalloc/errors.hpp"
#include "fairalloc/experiment/config.hpp"

namespace fairalloc::experiment {

/// A solver error raised inside one trial, tagged with where it happened.
class TrialFailure : public SolverError {
 public:
  TrialFailure(std::string policy, long horizon, long trial, const std::string& cause);
  std::string policy;
  long horizon;
  long trial;
};

struct RunOptions {
  std::optional<std::string> output_dir;  // overrides the config
  int threads = 1;
  bool dump_trajectories = false;  // OR-ed with the config flag
  /// Write wall-clock times into summary.csv; otherwise the column holds NA
  /// so that reruns are byte-identical. timing.csv always has them.
  bool record_runtime = false;
};

struct SummaryRow {
  std::string env;
  std::string policy;
  long horizon = 0;
  long trial = 0;
  std::uint64_t seed = 0;
  double total_reward = 0.0;
  double regret = 0.0;
  double cumulative_unfairness = 0.0;
  long first_infeasible_t = -1;
  double runtime_ms = 0.0;
};

struct CellAggregate {
  std::string env;
  std::string policy;
  long horizon = 0;
  long trials = 0;
  double mean_total_reward = 0.0;
  double mean_regret = 0.0;
  double se_regret = 0.0;
  double mean_cumulative_unfairness = 0.0;
  double se_cumulative_unfairness = 0.0;
  long earliest_infeasible_t = -1;
};

struct RunResult {
  std::string output_dir;
  double opt_d = 0.0;
  Eigen::VectorXd y_star;
  std::vector<SummaryRow> rows;         // sorted by (env, policy, T, trial)
  std::vector<CellAggregate> aggregates;
};

/// Runs every (policy, T, trial) and writes into the output directory:
/// summary.csv, aggregate.csv, acceptance.csv, timing.csv, dlp.json and,
/// when dumping, trajectories/<policy>_T<T>_trial<k>.csv.
/// Throws IoError, TrialFailure.
RunResult run(const ExperimentConfig& config, const RunOptions& options = {});

/// %.12g
std::string format_number(double v);

/// Means recomputed from the rows as written (parsed back from text).
std::vector<CellAggregate> aggregate_rows(const std::vector<SummaryRow>& rows);

/// Reads a summary.csv written by run. Throws MissingInput, IoError.
std::vector<SummaryRow> read_summary(const std::string& path);

inline constexpr const char* kSummaryHeader =
    "env,policy,T,trial,seed,total_reward,regret,cumulative_unfairness,first_infeasible_t,runtime_ms";

}  // namespace fairalloc::experiment
