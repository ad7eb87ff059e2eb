#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace fairalloc::lp {

/// Dense simplex tableau in canonical form for A x = b, x >= 0.
///
/// Pivoting follows Bland's rule (lowest eligible index enters, lowest basic
/// index leaves among ratio ties), so a run is fully determined by its input.
class Tableau {
 public:
  enum class Status { optimal, unbounded };

  /// `basis[r]` must be a column of `a` equal to the r-th unit vector and `b >= 0`.
  Tableau(Eigen::MatrixXd a, Eigen::VectorXd b, std::vector<std::size_t> basis);

  std::size_t rows() const { return basis_.size(); }
  std::size_t cols() const { return static_cast<std::size_t>(body_.cols()); }

  /// Replaces the objective (maximized) and recomputes reduced costs.
  void set_objective(const Eigen::VectorXd& cost);

  /// Runs primal simplex from the current basis. Columns with `allowed[j] == 0`
  /// never enter. Throws IterationLimit after `max_pivots`.
  Status maximize(const std::vector<char>& allowed, int max_pivots, double eps = 1e-11);

  void pivot(std::size_t row, std::size_t col);

  /// Removes a constraint row whose basic variable is artificial and cannot be pivoted out.
  void drop_row(std::size_t row);

  double objective_value() const { return value_; }
  /// d_j = c_j - c_B' B^{-1} A_j; at a maximum every allowed d_j <= 0.
  const Eigen::VectorXd& reduced_costs() const { return reduced_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  const Eigen::MatrixXd& body() const { return body_; }
  const Eigen::VectorXd& values() const { return rhs_; }

  /// Current basic solution over all columns.
  Eigen::VectorXd primal() const;
  bool is_basic(std::size_t col) const { return in_basis_[col] != 0; }

 private:
  Eigen::MatrixXd body_;
  Eigen::VectorXd rhs_;
  std::vector<std::size_t> basis_;
  std::vector<char> in_basis_;
  Eigen::VectorXd cost_;
  Eigen::VectorXd reduced_;
  double value_ = 0.0;
};

enum class Sense { less_equal, equal, greater_equal };

/// maximize objective'x  s.t.  rows of matrix (sense) rhs,  x >= 0.
struct LinearProgram {
  Eigen::VectorXd objective;
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  std::vector<Sense> senses;
};

struct LinearProgramResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  Eigen::VectorXd x;
  double objective_value = 0.0;
};

/// Two-phase Bland simplex for small dense problems.
LinearProgramResult solve_linear_program(const LinearProgram& program, int max_pivots = 10000,
                                         double feasibility_tol = 1e-9);

}  // namespace fairalloc::lp
