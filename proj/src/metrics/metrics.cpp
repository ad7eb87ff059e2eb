#include "fairalloc/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fairalloc/errors.hpp"

namespace fairalloc::metrics {

double regret(const EpisodeRecord& record, double opt_d) {
  return static_cast<double>(record.horizon) * opt_d - record.total_reward;
}

double cumulative_unfairness(const EpisodeRecord& record, const VectorXd& y_star) {
  double total = 0.0;
  for (const auto& s : record.steps) {
    if (s.t < 2 || s.y.size() == 0) continue;
    if (s.y.size() != y_star.size()) {
      throw DimensionMismatch("cumulative_unfairness: y_t has length " + std::to_string(s.y.size()) +
                              ", y* has " + std::to_string(y_star.size()));
    }
    total += (s.y - y_star).squaredNorm();
  }
  return total;
}

long first_infeasible_t(const EpisodeRecord& record, const Eigen::MatrixXd& consumption) {
  const auto m = consumption.rows();
  VectorXd threshold = VectorXd::Constant(m, std::numeric_limits<double>::infinity());
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < consumption.cols(); ++j) {
      if (consumption(i, j) > 0.0) threshold[i] = std::min(threshold[i], consumption(i, j));
    }
    // A resource nothing consumes never runs short.
    if (std::isinf(threshold[i])) threshold[i] = -std::numeric_limits<double>::infinity();
  }
  // B_{t+1} is stored on step t, so a shortfall there first bites at t + 1.
  for (const auto& s : record.steps) {
    if (s.budget_after.size() != m) throw DimensionMismatch("first_infeasible_t: budget length");
    if ((s.budget_after.array() < threshold.array()).any()) return s.t + 1;
  }
  return -1;
}

std::pair<double, double> mean_and_se(const std::vector<double>& values) {
  if (values.empty()) throw EmptyInput("mean_and_se: no values");
  double sum = 0.0;
  for (double v : values) sum += v;
  const double k = static_cast<double>(values.size());
  const double mean = sum / k;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (k - 1.0) / k)};
}

MetricSummary summarize(const std::vector<TrialMetrics>& trials) {
  if (trials.empty()) throw EmptyInput("summarize: no trials");
  MetricSummary out;
  out.trials = trials;
  std::stable_sort(out.trials.begin(), out.trials.end(),
                   [](const TrialMetrics& a, const TrialMetrics& b) { return a.seed < b.seed; });
  std::vector<double> reg, uf, reward;
  for (const auto& tm : out.trials) {
    reg.push_back(tm.regret);
    uf.push_back(tm.cumulative_unfairness);
    reward.push_back(tm.total_reward);
    if (tm.first_infeasible_t >= 0 &&
        (out.earliest_infeasible_t < 0 || tm.first_infeasible_t < out.earliest_infeasible_t)) {
      out.earliest_infeasible_t = tm.first_infeasible_t;
    }
  }
  std::tie(out.mean_regret, out.se_regret) = mean_and_se(reg);
  std::tie(out.mean_cumulative_unfairness, out.se_cumulative_unfairness) = mean_and_se(uf);
  out.mean_total_reward = mean_and_se(reward).first;
  return out;
}

MetricSummary summarize(const std::vector<EpisodeRecord>& records, double opt_d,
                        const VectorXd& y_star, const Eigen::MatrixXd& consumption) {
  if (records.empty()) throw EmptyInput("summarize: no records");
  std::vector<TrialMetrics> trials;
  trials.reserve(records.size());
  for (const auto& r : records) {
    TrialMetrics tm;
    tm.seed = r.seed;
    tm.total_reward = r.total_reward;
    tm.regret = regret(r, opt_d);
    tm.cumulative_unfairness = cumulative_unfairness(r, y_star);
    tm.first_infeasible_t = first_infeasible_t(r, consumption);
    trials.push_back(tm);
  }
  return summarize(trials);
}

std::vector<double> acceptance_series(const std::vector<EpisodeRecord>& records, std::size_t type) {
  if (records.empty()) throw EmptyInput("acceptance_series: no records");
  std::size_t len = 0;
  for (const auto& r : records) len = std::max(len, r.steps.size());
  std::vector<double> sum(len, 0.0);
  std::vector<int> hits(len, 0);
  for (const auto& r : records) {
    for (std::size_t k = 0; k < r.steps.size(); ++k) {
      const auto& y = r.steps[k].y;
      if (y.size() == 0) continue;
      if (type >= static_cast<std::size_t>(y.size())) throw InvalidType("acceptance_series: type out of range");
      sum[k] += y[static_cast<Eigen::Index>(type)];
      hits[k] += 1;
    }
  }
  std::vector<double> out(len, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t k = 0; k < len; ++k) {
    if (hits[k] > 0) out[k] = sum[k] / hits[k];
  }
  return out;
}

}  // namespace fairalloc::metrics
