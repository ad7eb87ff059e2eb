#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fairalloc/lp/types.hpp"
#include "fairalloc/market/environment.hpp"
#include "fairalloc/market/rng.hpp"

namespace fairalloc::policy {

using Eigen::VectorXd;

enum class PolicyKind { adaptive_simplex, adaptive_interior, adaptive_fair };

std::string_view to_string(PolicyKind kind);
/// Throws InputError on an unknown name.
PolicyKind parse_policy_kind(std::string_view name);
const std::vector<PolicyKind>& all_policy_kinds();

struct PolicyState {
  PolicyKind kind = PolicyKind::adaptive_fair;
  /// Known support; probabilities are not visible to the policy.
  std::vector<market::OrderType> support;
  long horizon = 1;  // T
  long t = 1;        // period about to be played
  VectorXd initial_budget;    // B
  VectorXd initial_average;   // b = B / T
  VectorXd remaining_budget;  // B_t
  std::vector<long> counts;   // N_j(t-1)
  VectorXd p_hat;             // N_j(t-1) / (t-1), zero before any arrival
  VectorXd last_decision;     // y of the previous step, empty until t = 2 is played
  std::optional<lp::BindingSet> last_binding;
  lp::Tolerances tol;
};

struct Decision {
  int x = 0;
  /// Acceptance probabilities; empty at t = 1.
  VectorXd y;
  std::optional<std::size_t> accepted_type;
  /// b_t = B_t / (T - t + 1); empty at t = 1.
  VectorXd average_budget;
  /// Fair policy only.
  std::optional<VectorXd> b_prime;
  std::optional<lp::BindingSet> binding;
};

PolicyState init(PolicyKind kind, std::vector<market::OrderType> support,
                 const VectorXd& total_budget, long horizon, const lp::Tolerances& tol = {});

/// Sampled LP with the current empirical frequencies and the given rhs.
lp::PackedLP sampled_lp(const PolicyState& state, const VectorXd& rhs);

/// One period: solve, draw, accept if the budget permits, update counts.
/// Always consumes exactly one uniform from `rng`. Throws InvalidType.
std::pair<Decision, PolicyState> step(PolicyState state, std::size_t arriving_type,
                                      market::Rng& rng);

struct StepRecord {
  long t = 0;
  std::size_t type = 0;
  VectorXd y;  // empty at t = 1
  int x = 0;
  double reward = 0.0;
  VectorXd budget_after;  // B_{t+1}
  std::optional<lp::BindingSet> binding;
  std::optional<VectorXd> b_prime;
};

struct EpisodeRecord {
  std::string env_id;
  PolicyKind kind = PolicyKind::adaptive_fair;
  long horizon = 0;
  std::uint64_t seed = 0;
  std::vector<StepRecord> steps;
  double total_reward = 0.0;
};

/// Runs t = 1..T with arrivals and acceptance draws from `rng` (arrival
/// first, then the acceptance uniform, every period).
EpisodeRecord run_episode(const market::Environment& env, PolicyKind kind, market::Rng& rng,
                          const lp::Tolerances& tol = {});

}  // namespace fairalloc::policy
