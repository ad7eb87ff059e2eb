#pragma once

#include <Eigen/Dense>

namespace fairalloc::lp {

/// maximize sum_k log(h_k - G_k x)  s.t.  E x = e.
struct BarrierProblem {
  Eigen::MatrixXd inequality_matrix;  // G
  Eigen::VectorXd inequality_rhs;     // h
  Eigen::MatrixXd equality_matrix;    // E, may have zero rows
  Eigen::VectorXd equality_rhs;       // e
};

struct NewtonOptions {
  double gradient_tol = 1e-10;
  int max_iterations = 100;
};

struct BarrierResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double gradient_norm = 0.0;
  /// Dimension of the null space of E the iteration moved in.
  Eigen::Index free_dimension = 0;
};

/// Damped Newton in the null space of E starting from a strictly feasible x0
/// (E x0 = e is assumed, not enforced). Stops at a reduced-gradient norm below
/// `gradient_tol`, or once the Newton decrement drops under double resolution.
///
/// Throws NewtonDivergence when x0 is not interior, the barrier is unbounded,
/// or the line search stalls; IterationLimit when `max_iterations` is hit.
BarrierResult maximize_log_barrier(const BarrierProblem& problem, const Eigen::VectorXd& x0,
                                   const NewtonOptions& options = {});

/// Orthonormal basis of {d : E d = 0} via SVD with a relative rank cut.
Eigen::MatrixXd null_space_basis(const Eigen::MatrixXd& e, Eigen::Index cols);

}  // namespace fairalloc::lp
