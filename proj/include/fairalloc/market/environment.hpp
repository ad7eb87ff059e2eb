#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "fairalloc/lp/types.hpp"
#include "fairalloc/market/rng.hpp"

namespace fairalloc::market {

struct OrderType {
  double reward = 0.0;
  Eigen::VectorXd consumption;
};

/// Known support with probabilities hidden from the policies.
struct FiniteDistribution {
  std::vector<OrderType> types;
  Eigen::VectorXd probabilities;

  std::size_t num_types() const { return types.size(); }
  std::size_t num_resources() const {
    return types.empty() ? 0 : static_cast<std::size_t>(types.front().consumption.size());
  }

  /// p > 0, sum p = 1 within 1e-12, consistent non-negative consumption vectors.
  void validate() const;

  /// m x n matrix with column j equal to c_j.
  Eigen::MatrixXd consumption_matrix() const;
  Eigen::VectorXd rewards() const;
};

struct Environment {
  std::string id;
  FiniteDistribution dist;
  Eigen::VectorXd avg_budget;    // b
  long horizon = 1;              // T
  Eigen::VectorXd total_budget;  // B = T b

  void validate() const;
};

Environment make_environment(std::string id, FiniteDistribution dist, Eigen::VectorXd avg_budget,
                             long horizon);

/// Same environment with a new horizon (and B rescaled).
Environment with_horizon(const Environment& env, long horizon);

FiniteDistribution make_distribution(const std::vector<double>& probabilities,
                                     const std::vector<double>& rewards,
                                     const Eigen::MatrixXd& consumption);

/// Fluid LP: objective p_j mu_j, column p_j c_j, rhs b.
lp::PackedLP build_dlp(const FiniteDistribution& dist, const Eigen::VectorXd& avg_budget);
lp::PackedLP build_dlp(const Environment& env);

/// Inverse-CDF draw over the stored type order.
std::size_t sample_order(const FiniteDistribution& dist, Rng& rng);

/// Built-in instances: D32, D34, E51, E52, E53. Throws UnknownPreset.
Environment preset(std::string_view name, long horizon = 1);
const std::vector<std::string>& preset_names();

}  // namespace fairalloc::market
