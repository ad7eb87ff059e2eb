#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "fairalloc/policy/policy.hpp"

namespace fairalloc::metrics {

using Eigen::VectorXd;
using policy::EpisodeRecord;

/// T * opt_d - total reward.
double regret(const EpisodeRecord& record, double opt_d);

/// sum over t >= 2 of ||y_t - y*||^2. Steps without a recorded y are skipped.
/// Throws DimensionMismatch.
double cumulative_unfairness(const EpisodeRecord& record, const VectorXd& y_star);

/// First period t whose opening budget B_t has some resource below the
/// smallest positive consumption of that resource over the support, or -1.
/// Only B_2..B_{T+1} are inspected; T + 1 means the episode ended short.
long first_infeasible_t(const EpisodeRecord& record, const Eigen::MatrixXd& consumption);

struct TrialMetrics {
  std::uint64_t seed = 0;
  double total_reward = 0.0;
  double regret = 0.0;
  double cumulative_unfairness = 0.0;
  long first_infeasible_t = -1;
};

struct MetricSummary {
  std::vector<TrialMetrics> trials;  // sorted by seed
  double mean_regret = 0.0;
  double se_regret = 0.0;
  double mean_cumulative_unfairness = 0.0;
  double se_cumulative_unfairness = 0.0;
  double mean_total_reward = 0.0;
  /// Earliest first_infeasible_t over the trials, -1 if none ran short.
  long earliest_infeasible_t = -1;
};

/// Mean and standard error (sample sd / sqrt(k); 0 for one value). Throws EmptyInput.
std::pair<double, double> mean_and_se(const std::vector<double>& values);

MetricSummary summarize(const std::vector<TrialMetrics>& trials);
/// `consumption` is the m x n matrix of c_j columns. Throws EmptyInput.
MetricSummary summarize(const std::vector<EpisodeRecord>& records, double opt_d,
                        const VectorXd& y_star, const Eigen::MatrixXd& consumption);

/// Per-period trial mean of y_{j,t}; NaN at periods without a recorded y.
/// Throws EmptyInput.
std::vector<double> acceptance_series(const std::vector<EpisodeRecord>& records, std::size_t type);

}  // namespace fairalloc::metrics
