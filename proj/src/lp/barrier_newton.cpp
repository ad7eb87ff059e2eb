#include "fairalloc/lp/barrier_newton.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fairalloc/errors.hpp"

namespace fairalloc::lp {

namespace {

constexpr double kRankCut = 1e-10;
constexpr double kDecrementFloor = 1e-20;
constexpr double kArmijo = 0.25;
constexpr double kMinStep = 1e-16;
// Squared Newton decrement below which full steps converge quadratically.
constexpr double kQuadraticRegion = 0.0625;

double barrier(const Eigen::VectorXd& slack) {
  double total = 0.0;
  for (Eigen::Index k = 0; k < slack.size(); ++k) total += std::log(slack[k]);
  return total;
}

}  // namespace

Eigen::MatrixXd null_space_basis(const Eigen::MatrixXd& e, Eigen::Index cols) {
  if (e.rows() == 0) return Eigen::MatrixXd::Identity(cols, cols);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv[0] : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv[k] > kRankCut * std::max(1.0, top)) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

BarrierResult maximize_log_barrier(const BarrierProblem& problem, const Eigen::VectorXd& x0,
                                   const NewtonOptions& options) {
  const auto& g_mat = problem.inequality_matrix;
  const auto& h = problem.inequality_rhs;
  const Eigen::Index n = x0.size();

  BarrierResult result;
  result.x = x0;

  Eigen::VectorXd slack = h - g_mat * result.x;
  if (slack.size() > 0 && slack.minCoeff() <= 0.0) {
    throw NewtonDivergence("barrier start is not strictly interior (min slack " +
                           std::to_string(slack.minCoeff()) + ")");
  }

  const Eigen::MatrixXd basis = null_space_basis(problem.equality_matrix, n);
  result.free_dimension = basis.cols();
  if (basis.cols() == 0) return result;

  double value = barrier(slack);
  for (int iter = 0;; ++iter) {
    const Eigen::VectorXd inv = slack.cwiseInverse();
    const Eigen::VectorXd grad = -(g_mat.transpose() * inv);
    const Eigen::VectorXd reduced_grad = basis.transpose() * grad;
    result.gradient_norm = reduced_grad.norm();
    result.iterations = iter;
    if (result.gradient_norm <= options.gradient_tol) return result;
    if (iter >= options.max_iterations) {
      throw IterationLimit("barrier Newton did not converge in " +
                           std::to_string(options.max_iterations) + " iterations (gradient " +
                           std::to_string(result.gradient_norm) + ")");
    }

    // -Hessian = G' diag(1/s^2) G, restricted to the null space.
    const Eigen::MatrixXd scaled = inv.asDiagonal() * g_mat * basis;
    const Eigen::MatrixXd neg_hessian = scaled.transpose() * scaled;
    Eigen::LLT<Eigen::MatrixXd> llt(neg_hessian);
    if (llt.info() != Eigen::Success) {
      throw NewtonDivergence("barrier Hessian is singular on the feasible affine set");
    }
    const Eigen::VectorXd step_reduced = llt.solve(reduced_grad);
    const double decrement = reduced_grad.dot(step_reduced);
    if (decrement <= kDecrementFloor) return result;
    const Eigen::VectorXd step = basis * step_reduced;

    const Eigen::VectorXd rate = g_mat * step;
    double max_step = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < rate.size(); ++k) {
      if (rate[k] > 0.0) max_step = std::min(max_step, slack[k] / rate[k]);
    }
    if (!std::isfinite(max_step)) {
      throw NewtonDivergence("log barrier is unbounded on the feasible affine set");
    }

    // Inside the quadratic region of a self-concordant barrier the full step
    // is safe and value comparisons are below rounding, so skip the search.
    if (decrement < kQuadraticRegion && max_step > 1.0) {
      result.x += step;
      slack = h - g_mat * result.x;
      if (slack.minCoeff() > 0.0) {
        value = barrier(slack);
        continue;
      }
      result.x -= step;
      slack = h - g_mat * result.x;
    }

    double alpha = std::min(1.0, 0.99 * max_step);
    for (;;) {
      const Eigen::VectorXd trial = result.x + alpha * step;
      const Eigen::VectorXd trial_slack = h - g_mat * trial;
      if (trial_slack.minCoeff() > 0.0) {
        const double trial_value = barrier(trial_slack);
        if (trial_value >= value + kArmijo * alpha * decrement) {
          result.x = trial;
          slack = trial_slack;
          value = trial_value;
          break;
        }
      }
      alpha *= 0.5;
      if (alpha < kMinStep) {
        // Round-off dominates once the decrement is this small.
        if (decrement <= 1e-14) return result;
        throw NewtonDivergence("barrier line search stalled (decrement " +
                               std::to_string(decrement) + ")");
      }
    }
  }
}

}  // namespace fairalloc::lp
