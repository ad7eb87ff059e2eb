#include "fairalloc/policy/policy.hpp"

#include <string>

#include "fairalloc/errors.hpp"
#include "fairalloc/lp/lp_core.hpp"

namespace fairalloc::policy {

namespace {

bool fits(const VectorXd& consumption, const VectorXd& budget) {
  return (consumption.array() <= budget.array()).all();
}

VectorXd solve(PolicyKind kind, const lp::PackedLP& lp, const lp::Tolerances& tol) {
  if (kind == PolicyKind::adaptive_simplex) return lp::solve_vertex(lp, tol).y;
  return lp::analytic_center(lp, tol).y;
}

}  // namespace

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::adaptive_simplex: return "adaptive_simplex";
    case PolicyKind::adaptive_interior: return "adaptive_interior";
    case PolicyKind::adaptive_fair: return "adaptive_fair";
  }
  return "unknown";
}

PolicyKind parse_policy_kind(std::string_view name) {
  for (auto kind : all_policy_kinds()) {
    if (to_string(kind) == name) return kind;
  }
  throw InputError("unknown policy '" + std::string(name) +
                   "' (expected adaptive_simplex, adaptive_interior or adaptive_fair)");
}

const std::vector<PolicyKind>& all_policy_kinds() {
  static const std::vector<PolicyKind> kinds = {
      PolicyKind::adaptive_simplex, PolicyKind::adaptive_interior, PolicyKind::adaptive_fair};
  return kinds;
}

PolicyState init(PolicyKind kind, std::vector<market::OrderType> support,
                 const VectorXd& total_budget, long horizon, const lp::Tolerances& tol) {
  if (support.empty()) throw InputError("policy needs a non-empty support");
  if (horizon < 1) throw InputError("horizon must be >= 1");
  for (const auto& type : support) {
    if (type.consumption.size() != total_budget.size()) {
      throw DimensionMismatch("support consumption length differs from budget length");
    }
  }
  PolicyState state;
  state.kind = kind;
  state.support = std::move(support);
  state.horizon = horizon;
  state.t = 1;
  state.initial_budget = total_budget;
  state.initial_average = total_budget / static_cast<double>(horizon);
  state.remaining_budget = total_budget;
  state.counts.assign(state.support.size(), 0);
  state.p_hat = VectorXd::Zero(static_cast<Eigen::Index>(state.support.size()));
  state.tol = tol;
  return state;
}

lp::PackedLP sampled_lp(const PolicyState& state, const VectorXd& rhs) {
  const auto n = static_cast<Eigen::Index>(state.support.size());
  const auto m = rhs.size();
  VectorXd objective(n);
  Eigen::MatrixXd columns(m, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& type = state.support[static_cast<std::size_t>(j)];
    objective[j] = state.p_hat[j] * type.reward;
    columns.col(j) = state.p_hat[j] * type.consumption;
  }
  return lp::PackedLP(std::move(objective), std::move(columns), rhs);
}

std::pair<Decision, PolicyState> step(PolicyState state, std::size_t arriving_type,
                                      market::Rng& rng) {
  if (arriving_type >= state.support.size()) {
    throw InvalidType("order type " + std::to_string(arriving_type) + " out of range (n = " +
                      std::to_string(state.support.size()) + ")");
  }
  if (state.t < 1 || state.t > state.horizon) {
    throw InputError("step called at t = " + std::to_string(state.t) + " beyond horizon " +
                     std::to_string(state.horizon));
  }
  const auto& type = state.support[arriving_type];
  const double u = rng.uniform();
  const bool permitted = fits(type.consumption, state.remaining_budget);

  Decision decision;
  if (state.t == 1) {
    decision.x = permitted ? 1 : 0;
  } else {
    decision.average_budget =
        state.remaining_budget / static_cast<double>(state.horizon - state.t + 1);
    const lp::PackedLP lp = sampled_lp(state, decision.average_budget);
    if (state.kind == PolicyKind::adaptive_fair) {
      const lp::LPSolution first = lp::analytic_center(lp, state.tol);
      lp::BindingSet binding = lp::binding_set(lp, first, state.tol.binding);
      VectorXd b_prime = state.initial_average;
      for (auto i : binding.binding) {
        b_prime[static_cast<Eigen::Index>(i)] = decision.average_budget[static_cast<Eigen::Index>(i)];
      }
      decision.y = lp::analytic_center(lp.with_rhs(b_prime), state.tol).y;
      decision.b_prime = std::move(b_prime);
      decision.binding = binding;
      state.last_binding = std::move(binding);
    } else {
      decision.y = solve(state.kind, lp, state.tol);
    }
    const double y = decision.y[static_cast<Eigen::Index>(arriving_type)];
    decision.x = (permitted && u < y) ? 1 : 0;
    state.last_decision = decision.y;
  }
  if (decision.x == 1) {
    decision.accepted_type = arriving_type;
    state.remaining_budget -= type.consumption;
  }

  state.counts[arriving_type] += 1;
  const double seen = static_cast<double>(state.t);
  for (std::size_t j = 0; j < state.counts.size(); ++j) {
    state.p_hat[static_cast<Eigen::Index>(j)] = static_cast<double>(state.counts[j]) / seen;
  }
  state.t += 1;
  return {std::move(decision), std::move(state)};
}

EpisodeRecord run_episode(const market::Environment& env, PolicyKind kind, market::Rng& rng,
                          const lp::Tolerances& tol) {
  env.validate();
  EpisodeRecord record;
  record.env_id = env.id;
  record.kind = kind;
  record.horizon = env.horizon;
  record.steps.reserve(static_cast<std::size_t>(env.horizon));

  PolicyState state = init(kind, env.dist.types, env.total_budget, env.horizon, tol);
  for (long t = 1; t <= env.horizon; ++t) {
    const std::size_t j = market::sample_order(env.dist, rng);
    auto [decision, next] = step(std::move(state), j, rng);
    state = std::move(next);

    StepRecord rec;
    rec.t = t;
    rec.type = j;
    rec.y = std::move(decision.y);
    rec.x = decision.x;
    rec.reward = decision.x == 1 ? env.dist.types[j].reward : 0.0;
    rec.budget_after = state.remaining_budget;
    rec.binding = std::move(decision.binding);
    rec.b_prime = std::move(decision.b_prime);
    record.total_reward += rec.reward;
    record.steps.push_back(std::move(rec));
  }
  return record;
}

}  // namespace fairalloc::policy
