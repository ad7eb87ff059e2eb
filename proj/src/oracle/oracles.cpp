#include "fairalloc/oracle/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fairalloc/errors.hpp"
#include "fairalloc/lp/lp_core.hpp"
#include "fairalloc/lp/simplex.hpp"

namespace fairalloc::oracle {

namespace {

using Eigen::MatrixXd;

void check_size(const PackedLP& lp, const OracleLimits& limits) {
  if (lp.num_vars() > limits.max_vars || lp.num_resources() > limits.max_resources) {
    throw TooLarge("oracle enumeration is capped at n <= " + std::to_string(limits.max_vars) +
                   ", m <= " + std::to_string(limits.max_resources));
  }
}

/// Calls visit(indices) for every k-subset of {0..total-1} in lexicographic order.
template <typename Visit>
void for_each_subset(std::size_t total, std::size_t k, Visit&& visit) {
  if (k > total) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == total - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void push_unique(std::vector<VectorXd>& out, const VectorXd& v, double tol) {
  for (const auto& w : out) {
    if ((w - v).lpNorm<Eigen::Infinity>() <= tol) return;
  }
  out.push_back(v);
}

/// The m+2n inequalities of the packed LP as rows G y <= h: resources, -y <= 0, y <= u.
void inequality_form(const PackedLP& lp, MatrixXd& g, VectorXd& h) {
  const auto n = static_cast<Eigen::Index>(lp.num_vars());
  const auto m = static_cast<Eigen::Index>(lp.num_resources());
  g = MatrixXd::Zero(m + 2 * n, n);
  h = VectorXd::Zero(m + 2 * n);
  g.topRows(m) = lp.resource_matrix;
  h.head(m) = lp.rhs;
  g.middleRows(m, n) = -MatrixXd::Identity(n, n);
  g.bottomRows(n) = MatrixXd::Identity(n, n);
  h.tail(n) = lp.upper_bounds;
}

}  // namespace

VertexSet enumerate_primal_optimal_vertices(const PackedLP& lp, const OracleLimits& limits) {
  check_size(lp, limits);
  const auto n = lp.num_vars();
  MatrixXd g;
  VectorXd h;
  inequality_form(lp, g, h);
  const auto rows = static_cast<std::size_t>(g.rows());

  // A standard-form basis is the complement of n active inequalities.
  std::vector<VectorXd> feasible;
  MatrixXd active(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  VectorXd active_rhs(static_cast<Eigen::Index>(n));
  for_each_subset(rows, n, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t r = 0; r < n; ++r) {
      active.row(static_cast<Eigen::Index>(r)) = g.row(static_cast<Eigen::Index>(idx[r]));
      active_rhs[static_cast<Eigen::Index>(r)] = h[static_cast<Eigen::Index>(idx[r])];
    }
    Eigen::FullPivLU<MatrixXd> lu(active);
    if (!lu.isInvertible()) return;
    const VectorXd y = lu.solve(active_rhs);
    if (((g * y - h).array() > limits.tol).any()) return;
    push_unique(feasible, y, limits.tol);
  });

  VertexSet set;
  set.face_objective = -std::numeric_limits<double>::infinity();
  for (const auto& y : feasible) set.face_objective = std::max(set.face_objective, lp.objective.dot(y));
  const double cut = set.face_objective - limits.tol * std::max(1.0, std::abs(set.face_objective));
  for (const auto& y : feasible) {
    if (lp.objective.dot(y) >= cut) set.vertices.push_back(y);
  }
  return set;
}

double dual_objective(const PackedLP& lp, const VectorXd& lambda) {
  const VectorXd reduced = lp.objective - lp.resource_matrix.transpose() * lambda;
  return lp.rhs.dot(lambda) + reduced.cwiseMax(0.0).sum();
}

DualVertexSet enumerate_dual_optimal_vertices(const PackedLP& lp, const OracleLimits& limits) {
  check_size(lp, limits);
  const auto n = static_cast<Eigen::Index>(lp.num_vars());
  const auto m = static_cast<Eigen::Index>(lp.num_resources());
  // Hyperplanes a'l = c: the m coordinate planes then the n breakpoint planes.
  MatrixXd planes(m + n, m);
  VectorXd offsets(m + n);
  planes.topRows(m) = MatrixXd::Identity(m, m);
  offsets.head(m).setZero();
  planes.bottomRows(n) = lp.resource_matrix.transpose();
  offsets.tail(n) = lp.objective;

  std::vector<VectorXd> candidates;
  MatrixXd active(m, m);
  VectorXd active_rhs(m);
  for_each_subset(static_cast<std::size_t>(m + n), static_cast<std::size_t>(m),
                  [&](const std::vector<std::size_t>& idx) {
                    for (Eigen::Index r = 0; r < m; ++r) {
                      active.row(r) = planes.row(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(r)]));
                      active_rhs[r] = offsets[static_cast<Eigen::Index>(idx[static_cast<std::size_t>(r)])];
                    }
                    Eigen::FullPivLU<MatrixXd> lu(active);
                    if (!lu.isInvertible()) return;
                    VectorXd lambda = lu.solve(active_rhs);
                    if (lambda.minCoeff() < -limits.tol) return;
                    lambda = lambda.cwiseMax(0.0);
                    push_unique(candidates, lambda, limits.tol);
                  });

  DualVertexSet set;
  set.dual_optimum = std::numeric_limits<double>::infinity();
  for (const auto& l : candidates) set.dual_optimum = std::min(set.dual_optimum, dual_objective(lp, l));
  const double cut = set.dual_optimum + limits.tol * std::max(1.0, std::abs(set.dual_optimum));
  for (const auto& l : candidates) {
    if (dual_objective(lp, l) <= cut) set.duals.push_back(l);
  }
  return set;
}

NondegeneracyReport check_dual_nondegeneracy(const PackedLP& lp,
                                             const std::vector<std::size_t>& binding,
                                             const OracleLimits& limits) {
  constexpr double kPositive = 1e-7;
  NondegeneracyReport report;
  report.binding = binding;
  const DualVertexSet duals = enumerate_dual_optimal_vertices(lp, limits);
  for (const auto& lambda : duals.duals) {
    for (std::size_t i : binding) {
      if (lambda[static_cast<Eigen::Index>(i)] <= kPositive) {
        report.holds = false;
        report.witness_lambda = lambda;
        report.witness_row = i;
        return report;
      }
    }
  }
  return report;
}

double barrier_value(const PackedLP& lp, const VectorXd& y, const lp::ImplicitEqualities& implicit) {
  const auto n = lp.num_vars();
  const auto m = lp.num_resources();
  if (static_cast<std::size_t>(y.size()) != n) throw DimensionMismatch("barrier_value: y has wrong length");
  std::vector<char> tight(m, 0), at_zero(n, 0), at_upper(n, 0);
  for (auto i : implicit.tight_rows) tight[i] = 1;
  for (auto j : implicit.fixed_at_zero) at_zero[j] = 1;
  for (auto j : implicit.fixed_at_upper) at_upper[j] = 1;

  const VectorXd slack = lp.rhs - lp.resource_matrix * y;
  double total = 0.0;
  auto add = [&](double s, const char* what, std::size_t idx) {
    if (!(s > 0.0)) {
      throw NonInteriorPoint(std::string("barrier_value: ") + what + " " + std::to_string(idx) +
                             " has slack " + std::to_string(s));
    }
    total += std::log(s);
  };
  for (std::size_t i = 0; i < m; ++i) {
    if (!tight[i]) add(slack[static_cast<Eigen::Index>(i)], "resource", i);
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    if (!at_zero[j]) add(y[jj], "lower bound", j);
    if (!at_upper[j]) add(lp.upper_bounds[jj] - y[jj], "upper bound", j);
  }
  return total;
}

lp::ImplicitEqualities implicit_equalities_from_vertices(const PackedLP& lp, const VertexSet& set,
                                                         double tol) {
  const auto n = static_cast<Eigen::Index>(lp.num_vars());
  const auto m = static_cast<Eigen::Index>(lp.num_resources());
  VectorXd max_row = VectorXd::Constant(m, -std::numeric_limits<double>::infinity());
  VectorXd max_y = VectorXd::Constant(n, -std::numeric_limits<double>::infinity());
  VectorXd max_gap = max_y;
  for (const auto& y : set.vertices) {
    max_row = max_row.cwiseMax(lp.rhs - lp.resource_matrix * y);
    max_y = max_y.cwiseMax(y);
    max_gap = max_gap.cwiseMax(lp.upper_bounds - y);
  }
  lp::ImplicitEqualities out;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (max_row[i] <= tol) out.tight_rows.push_back(static_cast<std::size_t>(i));
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (max_y[j] <= tol) out.fixed_at_zero.push_back(static_cast<std::size_t>(j));
    if (max_gap[j] <= tol) out.fixed_at_upper.push_back(static_cast<std::size_t>(j));
  }
  return out;
}

double hull_residual(const std::vector<VectorXd>& points, const VectorXd& x) {
  if (points.empty()) throw EmptyInput("hull_residual: no points");
  const auto k = static_cast<Eigen::Index>(points.size());
  const Eigen::Index d = x.size();
  // Variables (w, r+, r-); rows: sum_k w_k v_k + r+ - r- = x, sum w = 1.
  lp::LinearProgram program;
  program.matrix = MatrixXd::Zero(d + 1, k + 2 * d);
  program.rhs = VectorXd::Zero(d + 1);
  for (Eigen::Index c = 0; c < k; ++c) {
    if (points[static_cast<std::size_t>(c)].size() != d) throw DimensionMismatch("hull_residual: ragged points");
    program.matrix.block(0, c, d, 1) = points[static_cast<std::size_t>(c)];
    program.matrix(d, c) = 1.0;
  }
  program.matrix.block(0, k, d, d).setIdentity();
  program.matrix.block(0, k + d, d, d) = -MatrixXd::Identity(d, d);
  program.rhs.head(d) = x;
  program.rhs[d] = 1.0;
  program.senses.assign(static_cast<std::size_t>(d + 1), lp::Sense::equal);
  program.objective = VectorXd::Zero(k + 2 * d);
  program.objective.tail(2 * d).setConstant(-1.0);
  const auto result = lp::solve_linear_program(program);
  if (result.status != lp::LinearProgramResult::Status::optimal) {
    throw SolverError("hull_residual: auxiliary LP did not solve");
  }
  return -result.objective_value;
}

}  // namespace fairalloc::oracle
