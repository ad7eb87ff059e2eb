#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace fairalloc::lp {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Numerical thresholds shared by every lp-core routine.
struct Tolerances {
  double feasibility = 1e-9;
  /// A slack whose maximum over the optimal face is at most this is an implicit equality.
  double implicit_equality = 1e-7;
  double newton_gradient = 1e-10;
  int newton_max_iterations = 100;
  double binding = 1e-7;
  /// Reduced costs below -reduced_cost fix their column to zero on the optimal face.
  double reduced_cost = 1e-10;
  int simplex_max_iterations = 10000;
};

/// maximize objective'y  s.t.  resource_matrix * y <= rhs,  0 <= y <= upper_bounds.
///
/// Column j is p_j * c_j and objective_j is p_j * mu_j, so every entry is
/// non-negative and y = 0 is always feasible.
struct PackedLP {
  VectorXd objective;
  MatrixXd resource_matrix;
  VectorXd rhs;
  VectorXd upper_bounds;

  PackedLP() = default;
  PackedLP(VectorXd objective, MatrixXd resource_matrix, VectorXd rhs);
  PackedLP(VectorXd objective, MatrixXd resource_matrix, VectorXd rhs, VectorXd upper_bounds);

  std::size_t num_vars() const { return static_cast<std::size_t>(objective.size()); }
  std::size_t num_resources() const { return static_cast<std::size_t>(rhs.size()); }

  /// Throws InputError on shape mismatch or negative data.
  void validate() const;

  PackedLP with_rhs(const VectorXd& new_rhs) const;
};

/// Equality form over ybar = (y, s, z) >= 0: [[C, I_m, 0], [I_n, 0, I_n]] ybar = (b, u).
struct StandardFormLP {
  MatrixXd matrix;
  VectorXd cost;
  VectorXd rhs;
};

enum class SolutionKind { vertex, analytic_center };

struct LPSolution {
  VectorXd y;
  double objective_value = 0.0;
  VectorXd resource_slack;
  SolutionKind kind = SolutionKind::vertex;
};

struct DualPoint {
  VectorXd lambda;
  /// objective_j - column_j' lambda, i.e. p_j (mu_j - c_j' lambda).
  VectorXd reduced_values;
};

struct BindingSet {
  std::vector<std::size_t> binding;
  std::vector<std::size_t> nonbinding;

  bool operator==(const BindingSet&) const = default;
};

/// Constraints that hold with equality on the whole optimal face.
struct ImplicitEqualities {
  std::vector<std::size_t> tight_rows;
  std::vector<std::size_t> fixed_at_zero;
  std::vector<std::size_t> fixed_at_upper;

  bool operator==(const ImplicitEqualities&) const = default;
};

}  // namespace fairalloc::lp
