#include "fairalloc/market/environment.hpp"

#include <cmath>
#include <string>

#include "fairalloc/errors.hpp"

namespace fairalloc::market {

void FiniteDistribution::validate() const {
  if (types.empty()) throw InputError("distribution needs at least one order type");
  if (static_cast<std::size_t>(probabilities.size()) != types.size()) {
    throw InputError("distribution: probability vector length does not match type count");
  }
  const Eigen::Index m = types.front().consumption.size();
  if (m < 1) throw InputError("distribution: consumption vectors must be non-empty");
  for (const auto& type : types) {
    if (type.consumption.size() != m) throw InputError("distribution: ragged consumption vectors");
    if (!type.consumption.allFinite() || type.consumption.minCoeff() < 0.0) {
      throw InputError("distribution: consumption must be finite and non-negative");
    }
    if (!std::isfinite(type.reward) || type.reward < 0.0) {
      throw InputError("distribution: rewards must be finite and non-negative");
    }
  }
  if (probabilities.minCoeff() <= 0.0) throw InputError("distribution: probabilities must be > 0");
  if (std::abs(probabilities.sum() - 1.0) > 1e-12) {
    throw InputError("distribution: probabilities must sum to 1");
  }
}

Eigen::MatrixXd FiniteDistribution::consumption_matrix() const {
  Eigen::MatrixXd c(static_cast<Eigen::Index>(num_resources()), static_cast<Eigen::Index>(num_types()));
  for (std::size_t j = 0; j < types.size(); ++j) c.col(static_cast<Eigen::Index>(j)) = types[j].consumption;
  return c;
}

Eigen::VectorXd FiniteDistribution::rewards() const {
  Eigen::VectorXd r(static_cast<Eigen::Index>(num_types()));
  for (std::size_t j = 0; j < types.size(); ++j) r[static_cast<Eigen::Index>(j)] = types[j].reward;
  return r;
}

void Environment::validate() const {
  dist.validate();
  if (static_cast<std::size_t>(avg_budget.size()) != dist.num_resources()) {
    throw InputError("environment: budget length does not match resource count");
  }
  if (avg_budget.minCoeff() <= 0.0) throw InputError("environment: average budget must be > 0");
  if (horizon < 1) throw InputError("environment: horizon must be positive");
}

Environment make_environment(std::string id, FiniteDistribution dist, Eigen::VectorXd avg_budget,
                             long horizon) {
  Environment env;
  env.id = std::move(id);
  env.dist = std::move(dist);
  env.avg_budget = std::move(avg_budget);
  env.horizon = horizon;
  env.validate();
  env.total_budget = static_cast<double>(horizon) * env.avg_budget;
  return env;
}

Environment with_horizon(const Environment& env, long horizon) {
  return make_environment(env.id, env.dist, env.avg_budget, horizon);
}

FiniteDistribution make_distribution(const std::vector<double>& probabilities,
                                     const std::vector<double>& rewards,
                                     const Eigen::MatrixXd& consumption) {
  if (probabilities.size() != rewards.size() ||
      static_cast<Eigen::Index>(rewards.size()) != consumption.cols()) {
    throw InputError("distribution: p, mu and the columns of C must have equal length");
  }
  FiniteDistribution dist;
  dist.probabilities = Eigen::Map<const Eigen::VectorXd>(probabilities.data(),
                                                         static_cast<Eigen::Index>(probabilities.size()));
  for (std::size_t j = 0; j < rewards.size(); ++j) {
    dist.types.push_back({rewards[j], consumption.col(static_cast<Eigen::Index>(j))});
  }
  dist.validate();
  return dist;
}

lp::PackedLP build_dlp(const FiniteDistribution& dist, const Eigen::VectorXd& avg_budget) {
  const Eigen::VectorXd& p = dist.probabilities;
  Eigen::VectorXd objective = p.cwiseProduct(dist.rewards());
  Eigen::MatrixXd columns = dist.consumption_matrix() * p.asDiagonal();
  return lp::PackedLP(std::move(objective), std::move(columns), avg_budget);
}

lp::PackedLP build_dlp(const Environment& env) { return build_dlp(env.dist, env.avg_budget); }

std::size_t sample_order(const FiniteDistribution& dist, Rng& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  const std::size_t n = dist.num_types();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    cumulative += dist.probabilities[static_cast<Eigen::Index>(j)];
    if (u < cumulative) return j;
  }
  return n - 1;
}

namespace {

Eigen::MatrixXd rows(std::initializer_list<std::initializer_list<double>> data) {
  const auto m = static_cast<Eigen::Index>(data.size());
  const auto n = static_cast<Eigen::Index>(data.begin()->size());
  Eigen::MatrixXd out(m, n);
  Eigen::Index i = 0;
  for (const auto& row : data) {
    Eigen::Index j = 0;
    for (double v : row) out(i, j++) = v;
    ++i;
  }
  return out;
}

Eigen::VectorXd vec(std::initializer_list<double> data) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(data.size()));
  Eigen::Index i = 0;
  for (double v : data) out[i++] = v;
  return out;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"D32", "D34", "E51", "E52", "E53"};
  return names;
}

Environment preset(std::string_view name, long horizon) {
  const std::vector<double> p7{0.15, 0.15, 0.15, 0.15, 0.15, 0.15, 0.1};
  if (name == "D32") {
    // Two resources, the third type uses both.
    return make_environment("D32",
                            make_distribution({0.3, 0.3, 0.4}, {1, 1, 2},
                                              rows({{1, 0, 1}, {0, 1, 1}})),
                            vec({0.2, 0.2}), horizon);
  }
  if (name == "D34") {
    // Resource 2 is non-binding but touches the optimal face.
    return make_environment("D34",
                            make_distribution({0.6, 0.4}, {6, 0.3}, rows({{2, 0.1}, {1, 10}})),
                            vec({1, 2}), horizon);
  }
  if (name == "E51") {
    return make_environment("E51",
                            make_distribution(p7, {7, 3.5, 4, 3.5, 6.5, 0.4, 0.7},
                                              rows({{2, 1, 1, 1, 1, 0.1, 0.2},
                                                    {1, 0.5, 1, 0.5, 2, 0.1, 0.1},
                                                    {1, 2, 0.5, 0.2, 0.5, 10, 7}})),
                            vec({0.5, 1, 2}), horizon);
  }
  if (name == "E52") {
    return make_environment("E52",
                            make_distribution(p7, {7, 7, 6.5, 3.2, 5.5, 5, 3.5},
                                              rows({{2, 1, 1, 1, 1.5, 1, 1},
                                                    {1, 2, 2, 0.5, 1, 1, 0.5},
                                                    {1, 1, 0.5, 0.2, 0.5, 1, 0.5}})),
                            vec({0.5, 0.5, 1.5}), horizon);
  }
  if (name == "E53") {
    return make_environment("E53",
                            make_distribution(p7, {4, 4, 4.5, 2.7, 3, 3, 2.8},
                                              rows({{2, 1, 1, 1, 1.5, 1, 1},
                                                    {1, 2, 2, 0.5, 1, 1, 0.5},
                                                    {1, 1, 1.5, 1.2, 0.5, 1, 1.3}})),
                            vec({0.5, 0.5, 0.5}), horizon);
  }
  throw UnknownPreset("unknown environment preset '" + std::string(name) + "'");
}

}  // namespace fairalloc::market
