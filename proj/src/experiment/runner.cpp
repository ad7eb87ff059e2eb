#include "fairalloc/experiment/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fairalloc/lp/lp_core.hpp"
#include "fairalloc/market/rng.hpp"
#include "fairalloc/metrics/metrics.hpp"
#include "fairalloc/policy/policy.hpp"

namespace fairalloc::experiment {

namespace fs = std::filesystem;

namespace {

struct TrialOutput {
  SummaryRow row;
  Eigen::MatrixXd y;  // T x n, row t-1; row 0 unused
  policy::EpisodeRecord record;  // kept only when dumping
};

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

void check_written(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double reparse(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

template <typename Task>
void run_parallel(std::size_t count, int threads, Task&& task) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= count) return;
      try {
        task(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void write_trajectory(const fs::path& path, const policy::EpisodeRecord& record) {
  auto out = open_out(path);
  const std::size_t n = record.steps.empty() ? 0 : record.steps.back().y.size();
  const std::size_t m = record.steps.empty() ? 0 : record.steps.back().budget_after.size();
  out << "t,type,x,reward";
  for (std::size_t j = 1; j <= n; ++j) out << ",y_" << j;
  for (std::size_t i = 1; i <= m; ++i) out << ",B_next_" << i;
  out << "\n";
  for (const auto& s : record.steps) {
    out << s.t << ',' << (s.type + 1) << ',' << s.x << ',' << format_number(s.reward);
    for (std::size_t j = 0; j < n; ++j) {
      out << ',' << (s.y.size() == 0 ? std::string("NA") : format_number(s.y[static_cast<Eigen::Index>(j)]));
    }
    for (std::size_t i = 0; i < m; ++i) out << ',' << format_number(s.budget_after[static_cast<Eigen::Index>(i)]);
    out << "\n";
  }
  check_written(out, path);
}

nlohmann::json index_list(const std::vector<std::size_t>& idx) {
  auto arr = nlohmann::json::array();
  for (auto i : idx) arr.push_back(i + 1);
  return arr;
}

nlohmann::json vector_json(const Eigen::VectorXd& v) {
  auto arr = nlohmann::json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) arr.push_back(v[k]);
  return arr;
}

}  // namespace

TrialFailure::TrialFailure(std::string policy_in, long horizon_in, long trial_in, const std::string& cause)
    : SolverError("solver failure in policy=" + policy_in + " T=" + std::to_string(horizon_in) +
                  " trial=" + std::to_string(trial_in) + ": " + cause),
      policy(std::move(policy_in)),
      horizon(horizon_in),
      trial(trial_in) {}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

std::vector<CellAggregate> aggregate_rows(const std::vector<SummaryRow>& rows) {
  std::vector<CellAggregate> out;
  std::size_t k = 0;
  while (k < rows.size()) {
    std::size_t end = k;
    std::vector<metrics::TrialMetrics> trials;
    while (end < rows.size() && rows[end].env == rows[k].env && rows[end].policy == rows[k].policy &&
           rows[end].horizon == rows[k].horizon) {
      metrics::TrialMetrics tm;
      tm.seed = rows[end].seed;
      tm.total_reward = reparse(rows[end].total_reward);
      tm.regret = reparse(rows[end].regret);
      tm.cumulative_unfairness = reparse(rows[end].cumulative_unfairness);
      tm.first_infeasible_t = rows[end].first_infeasible_t;
      trials.push_back(tm);
      ++end;
    }
    const auto summary = metrics::summarize(trials);
    CellAggregate agg;
    agg.env = rows[k].env;
    agg.policy = rows[k].policy;
    agg.horizon = rows[k].horizon;
    agg.trials = static_cast<long>(trials.size());
    agg.mean_total_reward = summary.mean_total_reward;
    agg.mean_regret = summary.mean_regret;
    agg.se_regret = summary.se_regret;
    agg.mean_cumulative_unfairness = summary.mean_cumulative_unfairness;
    agg.se_cumulative_unfairness = summary.se_cumulative_unfairness;
    agg.earliest_infeasible_t = summary.earliest_infeasible_t;
    out.push_back(agg);
    k = end;
  }
  return out;
}

std::vector<SummaryRow> read_summary(const std::string& path) {
  if (!fs::exists(path)) throw MissingInput("missing '" + path + "'");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != kSummaryHeader) {
    throw MissingInput("'" + path + "' does not start with the summary header");
  }
  std::vector<SummaryRow> rows;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 10) throw IoError(path + ":" + std::to_string(lineno) + ": expected 10 columns");
    try {
      SummaryRow r;
      r.env = cells[0];
      r.policy = cells[1];
      r.horizon = std::stol(cells[2]);
      r.trial = std::stol(cells[3]);
      r.seed = std::stoull(cells[4]);
      r.total_reward = std::stod(cells[5]);
      r.regret = std::stod(cells[6]);
      r.cumulative_unfairness = std::stod(cells[7]);
      r.first_infeasible_t = std::stol(cells[8]);
      r.runtime_ms = cells[9] == "NA" ? 0.0 : std::stod(cells[9]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw IoError(path + ":" + std::to_string(lineno) + ": malformed number");
    }
  }
  return rows;
}

RunResult run(const ExperimentConfig& config, const RunOptions& options) {
  using clock = std::chrono::steady_clock;
  RunResult result;
  result.output_dir = options.output_dir.value_or(config.output_dir);
  const bool dump = options.dump_trajectories || config.dump_trajectories;
  const fs::path out_dir(result.output_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir.string() + "': " + ec.message());
  if (dump) {
    fs::create_directories(out_dir / "trajectories", ec);
    if (ec) throw IoError("cannot create trajectories directory: " + ec.message());
  }

  const auto& env = config.env;
  const lp::PackedLP dlp = market::build_dlp(env);
  const lp::OptimalFace face = lp::analyze_optimal_face(dlp, config.tolerances);
  const lp::LPSolution center = lp::analytic_center(dlp, face, config.tolerances);
  const lp::DualPoint dual = lp::interior_dual(dlp, face, config.tolerances);
  const lp::BindingSet binding = lp::binding_set(dlp, center, config.tolerances.binding);
  result.opt_d = face.opt_value;
  result.y_star = center.y;
  const Eigen::MatrixXd consumption = env.dist.consumption_matrix();
  const auto n = static_cast<Eigen::Index>(env.dist.num_types());

  {
    nlohmann::json doc;
    doc["env"] = env.id;
    doc["objective"] = vector_json(dlp.objective);
    auto rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < dlp.resource_matrix.rows(); ++i) {
      rows.push_back(vector_json(dlp.resource_matrix.row(i).transpose()));
    }
    doc["resource_matrix"] = rows;
    doc["rhs"] = vector_json(dlp.rhs);
    doc["opt_d"] = result.opt_d;
    doc["y_star"] = vector_json(center.y);
    doc["lambda"] = vector_json(dual.lambda);
    doc["binding"] = index_list(binding.binding);
    doc["nonbinding"] = index_list(binding.nonbinding);
    doc["fixed_at_zero"] = index_list(face.implicit.fixed_at_zero);
    doc["fixed_at_upper"] = index_list(face.implicit.fixed_at_upper);
    const fs::path path = out_dir / "dlp.json";
    auto out = open_out(path);
    out << doc.dump(2) << "\n";
    check_written(out, path);
  }

  // Policies in name order so that cells come out sorted.
  std::vector<policy::PolicyKind> kinds = config.policies;
  std::sort(kinds.begin(), kinds.end(), [](auto a, auto b) { return policy::to_string(a) < policy::to_string(b); });
  std::vector<long> horizons = config.horizons;
  std::sort(horizons.begin(), horizons.end());

  const fs::path acceptance_path = out_dir / "acceptance.csv";
  auto acceptance = open_out(acceptance_path);
  acceptance << "env,policy,T,t";
  for (Eigen::Index j = 1; j <= n; ++j) acceptance << ",mean_y_" << j;
  acceptance << "\n";

  for (auto kind : kinds) {
    const std::string policy_name(policy::to_string(kind));
    for (long horizon : horizons) {
      const market::Environment cell_env = market::with_horizon(env, horizon);
      std::vector<TrialOutput> outputs(static_cast<std::size_t>(config.trials));
      run_parallel(outputs.size(), options.threads, [&](std::size_t k) {
        const long trial = static_cast<long>(k);
        const std::uint64_t seed = market::derive_seed(config.master_seed, env.id, policy_name,
                                                       static_cast<std::uint64_t>(horizon),
                                                       static_cast<std::uint64_t>(trial));
        market::Rng rng(seed);
        const auto start = clock::now();
        policy::EpisodeRecord record;
        try {
          record = policy::run_episode(cell_env, kind, rng, config.tolerances);
        } catch (const SolverError& e) {
          throw TrialFailure(policy_name, horizon, trial, e.what());
        }
        const auto stop = clock::now();
        record.seed = seed;

        TrialOutput& o = outputs[k];
        o.row.env = env.id;
        o.row.policy = policy_name;
        o.row.horizon = horizon;
        o.row.trial = trial;
        o.row.seed = seed;
        o.row.total_reward = record.total_reward;
        o.row.regret = metrics::regret(record, result.opt_d);
        o.row.cumulative_unfairness = metrics::cumulative_unfairness(record, result.y_star);
        o.row.first_infeasible_t = metrics::first_infeasible_t(record, consumption);
        o.row.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        o.y = Eigen::MatrixXd::Zero(horizon, n);
        for (const auto& s : record.steps) {
          if (s.y.size() == n) o.y.row(s.t - 1) = s.y.transpose();
        }
        if (dump) o.record = std::move(record);
      });

      Eigen::MatrixXd mean_y = Eigen::MatrixXd::Zero(horizon, n);
      for (const auto& o : outputs) mean_y += o.y;
      mean_y /= static_cast<double>(outputs.size());
      for (long t = 2; t <= horizon; ++t) {
        acceptance << env.id << ',' << policy_name << ',' << horizon << ',' << t;
        for (Eigen::Index j = 0; j < n; ++j) acceptance << ',' << format_number(mean_y(t - 1, j));
        acceptance << "\n";
      }
      for (auto& o : outputs) {
        if (dump) {
          write_trajectory(out_dir / "trajectories" /
                               (policy_name + "_T" + std::to_string(horizon) + "_trial" +
                                std::to_string(o.row.trial) + ".csv"),
                           o.record);
        }
        result.rows.push_back(o.row);
      }
    }
  }
  check_written(acceptance, acceptance_path);

  std::sort(result.rows.begin(), result.rows.end(), [](const SummaryRow& a, const SummaryRow& b) {
    return std::tie(a.env, a.policy, a.horizon, a.trial) < std::tie(b.env, b.policy, b.horizon, b.trial);
  });

  {
    const fs::path path = out_dir / "summary.csv";
    auto out = open_out(path);
    out << kSummaryHeader << "\n";
    for (const auto& r : result.rows) {
      out << r.env << ',' << r.policy << ',' << r.horizon << ',' << r.trial << ',' << r.seed << ','
          << format_number(r.total_reward) << ',' << format_number(r.regret) << ','
          << format_number(r.cumulative_unfairness) << ',' << r.first_infeasible_t << ','
          << (options.record_runtime ? format_number(r.runtime_ms) : std::string("NA")) << "\n";
    }
    check_written(out, path);
  }
  {
    const fs::path path = out_dir / "timing.csv";
    auto out = open_out(path);
    out << "env,policy,T,trial,runtime_ms\n";
    for (const auto& r : result.rows) {
      out << r.env << ',' << r.policy << ',' << r.horizon << ',' << r.trial << ',' << format_number(r.runtime_ms)
          << "\n";
    }
    check_written(out, path);
  }

  result.aggregates = aggregate_rows(result.rows);
  {
    const fs::path path = out_dir / "aggregate.csv";
    auto out = open_out(path);
    out << "env,policy,T,trials,mean_total_reward,mean_regret,se_regret,mean_cumulative_unfairness,"
           "se_cumulative_unfairness,earliest_infeasible_t\n";
    for (const auto& a : result.aggregates) {
      out << a.env << ',' << a.policy << ',' << a.horizon << ',' << a.trials << ','
          << format_number(a.mean_total_reward) << ',' << format_number(a.mean_regret) << ','
          << format_number(a.se_regret) << ',' << format_number(a.mean_cumulative_unfairness) << ','
          << format_number(a.se_cumulative_unfairness) << ',' << a.earliest_infeasible_t << "\n";
    }
    check_written(out, path);
  }
  return result;
}

}  // namespace fairalloc::experiment
