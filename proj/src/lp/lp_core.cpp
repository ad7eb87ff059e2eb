#include "fairalloc/lp/lp_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fairalloc/errors.hpp"
#include "fairalloc/lp/barrier_newton.hpp"
#include "fairalloc/lp/simplex.hpp"

namespace fairalloc::lp {

namespace {

Tableau standard_tableau(const PackedLP& lp) {
  StandardFormLP sf = to_standard_form(lp);
  const auto n = lp.num_vars();
  const auto m = lp.num_resources();
  std::vector<std::size_t> basis(m + n);
  for (std::size_t r = 0; r < m + n; ++r) basis[r] = n + r;  // s then z
  Tableau tableau(std::move(sf.matrix), std::move(sf.rhs), std::move(basis));
  tableau.set_objective(sf.cost);
  return tableau;
}

VectorXd clamp_to_box(VectorXd y, const VectorXd& upper) {
  for (Eigen::Index j = 0; j < y.size(); ++j) y[j] = std::clamp(y[j], 0.0, upper[j]);
  return y;
}

enum class VarState { free, at_zero, at_upper };

std::vector<VarState> variable_states(const PackedLP& lp, const ImplicitEqualities& implicit) {
  std::vector<VarState> state(lp.num_vars(), VarState::free);
  for (std::size_t j : implicit.fixed_at_upper) state[j] = VarState::at_upper;
  for (std::size_t j : implicit.fixed_at_zero) state[j] = VarState::at_zero;
  return state;
}

}  // namespace

StandardFormLP to_standard_form(const PackedLP& lp) {
  const auto n = static_cast<Eigen::Index>(lp.num_vars());
  const auto m = static_cast<Eigen::Index>(lp.num_resources());
  StandardFormLP sf;
  sf.matrix = MatrixXd::Zero(m + n, m + 2 * n);
  sf.matrix.topLeftCorner(m, n) = lp.resource_matrix;
  sf.matrix.block(0, n, m, m).setIdentity();
  sf.matrix.block(m, 0, n, n).setIdentity();
  sf.matrix.block(m, n + m, n, n).setIdentity();
  sf.cost = VectorXd::Zero(m + 2 * n);
  sf.cost.head(n) = lp.objective;
  sf.rhs.resize(m + n);
  sf.rhs << lp.rhs, lp.upper_bounds;
  return sf;
}

LPSolution make_solution(const PackedLP& lp, VectorXd y, SolutionKind kind) {
  LPSolution sol;
  sol.objective_value = lp.objective.dot(y);
  sol.resource_slack = lp.rhs - lp.resource_matrix * y;
  sol.y = std::move(y);
  sol.kind = kind;
  return sol;
}

LPSolution solve_vertex(const PackedLP& lp, const Tolerances& tol) {
  Tableau tableau = standard_tableau(lp);
  std::vector<char> allowed(tableau.cols(), 1);
  tableau.maximize(allowed, tol.simplex_max_iterations);
  VectorXd y = tableau.primal().head(static_cast<Eigen::Index>(lp.num_vars()));
  return make_solution(lp, clamp_to_box(std::move(y), lp.upper_bounds), SolutionKind::vertex);
}

double optimal_value(const PackedLP& lp, const Tolerances& tol) {
  return solve_vertex(lp, tol).objective_value;
}

OptimalFace analyze_optimal_face(const PackedLP& lp, const Tolerances& tol) {
  const auto n = lp.num_vars();
  const auto m = lp.num_resources();
  const std::size_t cols = m + 2 * n;
  const auto ni = static_cast<Eigen::Index>(n);

  Tableau tableau = standard_tableau(lp);
  std::vector<char> all(cols, 1);
  tableau.maximize(all, tol.simplex_max_iterations);

  OptimalFace face;
  face.vertex = clamp_to_box(tableau.primal().head(ni), lp.upper_bounds);
  face.opt_value = lp.objective.dot(face.vertex);

  // objective = OPT + sum d_j x_j over nonbasics, so the optimal face is the
  // feasible set with every strictly negative-reduced-cost column held at zero.
  std::vector<char> on_face(cols, 0);
  for (std::size_t j = 0; j < cols; ++j) {
    on_face[j] = tableau.reduced_costs()[static_cast<Eigen::Index>(j)] >= -tol.reduced_cost;
  }

  std::vector<char> witnessed(cols, 0);
  auto record = [&](const VectorXd& point) {
    bool fresh = false;
    for (std::size_t k = 0; k < cols; ++k) {
      if (!witnessed[k] && point[static_cast<Eigen::Index>(k)] > tol.implicit_equality) {
        witnessed[k] = 1;
        fresh = true;
      }
    }
    if (fresh || face.witnesses.empty()) {
      face.witnesses.push_back(clamp_to_box(point.head(ni), lp.upper_bounds));
    }
  };
  record(tableau.primal());

  for (std::size_t k = 0; k < cols; ++k) {
    if (!on_face[k] || witnessed[k]) continue;
    VectorXd unit = VectorXd::Zero(static_cast<Eigen::Index>(cols));
    unit[static_cast<Eigen::Index>(k)] = 1.0;
    tableau.set_objective(unit);
    tableau.maximize(on_face, tol.simplex_max_iterations);
    record(tableau.primal());
  }

  for (std::size_t k = 0; k < cols; ++k) {
    if (witnessed[k]) continue;
    if (k < n) {
      face.implicit.fixed_at_zero.push_back(k);
    } else if (k < n + m) {
      face.implicit.tight_rows.push_back(k - n);
    } else {
      face.implicit.fixed_at_upper.push_back(k - n - m);
    }
  }

  face.interior_point = VectorXd::Zero(ni);
  for (const auto& w : face.witnesses) face.interior_point += w;
  face.interior_point /= static_cast<double>(face.witnesses.size());
  return face;
}

ImplicitEqualities detect_implicit_equalities(const PackedLP& lp, double opt_value,
                                              const Tolerances& tol) {
  OptimalFace face = analyze_optimal_face(lp, tol);
  if (std::abs(face.opt_value - opt_value) > 1e-7 * std::max(1.0, std::abs(face.opt_value))) {
    throw InputError("detect_implicit_equalities: supplied optimum " + std::to_string(opt_value) +
                     " differs from LP optimum " + std::to_string(face.opt_value));
  }
  return face.implicit;
}

LPSolution analytic_center(const PackedLP& lp, const Tolerances& tol) {
  return analytic_center(lp, analyze_optimal_face(lp, tol), tol);
}

LPSolution analytic_center(const PackedLP& lp, const OptimalFace& face, const Tolerances& tol) {
  const auto n = static_cast<Eigen::Index>(lp.num_vars());
  const auto m = static_cast<Eigen::Index>(lp.num_resources());
  const std::vector<VarState> state = variable_states(lp, face.implicit);

  VectorXd y = VectorXd::Zero(n);
  std::vector<Eigen::Index> free_vars;
  for (Eigen::Index j = 0; j < n; ++j) {
    switch (state[static_cast<std::size_t>(j)]) {
      case VarState::free: free_vars.push_back(j); break;
      case VarState::at_upper: y[j] = lp.upper_bounds[j]; break;
      case VarState::at_zero: break;
    }
  }
  if (free_vars.empty()) return make_solution(lp, std::move(y), SolutionKind::analytic_center);

  const auto nf = static_cast<Eigen::Index>(free_vars.size());
  std::vector<char> tight(static_cast<std::size_t>(m), 0);
  for (std::size_t i : face.implicit.tight_rows) tight[i] = 1;
  const auto num_tight = static_cast<Eigen::Index>(face.implicit.tight_rows.size());
  // Contribution of the fixed variables moves to the right-hand sides.
  const VectorXd fixed_use = lp.resource_matrix * y;
  const double fixed_value = lp.objective.dot(y);

  BarrierProblem problem;
  problem.inequality_matrix = MatrixXd::Zero(m - num_tight + 2 * nf, nf);
  problem.inequality_rhs = VectorXd::Zero(m - num_tight + 2 * nf);
  problem.equality_matrix = MatrixXd::Zero(num_tight + 1, nf);
  problem.equality_rhs = VectorXd::Zero(num_tight + 1);
  Eigen::Index g_row = 0;
  Eigen::Index e_row = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const bool is_tight = tight[static_cast<std::size_t>(i)] != 0;
    for (Eigen::Index f = 0; f < nf; ++f) {
      const double a = lp.resource_matrix(i, free_vars[static_cast<std::size_t>(f)]);
      (is_tight ? problem.equality_matrix(e_row, f) : problem.inequality_matrix(g_row, f)) = a;
    }
    (is_tight ? problem.equality_rhs[e_row++] : problem.inequality_rhs[g_row++]) =
        lp.rhs[i] - fixed_use[i];
  }
  for (Eigen::Index f = 0; f < nf; ++f) {
    problem.equality_matrix(e_row, f) = lp.objective[free_vars[static_cast<std::size_t>(f)]];
    problem.inequality_matrix(g_row, f) = -1.0;
    problem.inequality_rhs[g_row++] = 0.0;
    problem.inequality_matrix(g_row, f) = 1.0;
    problem.inequality_rhs[g_row++] = lp.upper_bounds[free_vars[static_cast<std::size_t>(f)]];
  }
  problem.equality_rhs[e_row] = face.opt_value - fixed_value;

  VectorXd start(nf);
  for (Eigen::Index f = 0; f < nf; ++f) {
    start[f] = face.interior_point[free_vars[static_cast<std::size_t>(f)]];
  }

  NewtonOptions options{tol.newton_gradient, tol.newton_max_iterations};
  const BarrierResult centered = maximize_log_barrier(problem, start, options);
  if (centered.free_dimension == 0) {
    return make_solution(lp, face.vertex, SolutionKind::analytic_center);
  }
  for (Eigen::Index f = 0; f < nf; ++f) y[free_vars[static_cast<std::size_t>(f)]] = centered.x[f];
  return make_solution(lp, std::move(y), SolutionKind::analytic_center);
}

DualPoint interior_dual(const PackedLP& lp, const Tolerances& tol) {
  return interior_dual(lp, analyze_optimal_face(lp, tol), tol);
}

DualPoint interior_dual(const PackedLP& lp, const OptimalFace& face, const Tolerances& tol) {
  const auto n = static_cast<Eigen::Index>(lp.num_vars());
  const auto m = static_cast<Eigen::Index>(lp.num_resources());
  const std::vector<VarState> state = variable_states(lp, face.implicit);
  const auto& rows = face.implicit.tight_rows;
  const auto k = static_cast<Eigen::Index>(rows.size());

  DualPoint dual;
  dual.lambda = VectorXd::Zero(m);
  if (k > 0) {
    // Restricted columns: col(j) over the tight rows only.
    MatrixXd c_tight(k, n);
    for (Eigen::Index r = 0; r < k; ++r) {
      c_tight.row(r) = lp.resource_matrix.row(static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)]));
    }

    // Max-margin strictly complementary point over x = (lambda_tight, t).
    LinearProgram margin;
    margin.matrix = MatrixXd::Zero(k + n + 1, k + 1);
    margin.rhs = VectorXd::Zero(k + n + 1);
    margin.objective = VectorXd::Zero(k + 1);
    margin.objective[k] = 1.0;
    Eigen::Index row = 0;
    for (Eigen::Index r = 0; r < k; ++r, ++row) {
      margin.matrix(row, r) = -1.0;
      margin.matrix(row, k) = 1.0;
      margin.senses.push_back(Sense::less_equal);
    }
    for (Eigen::Index j = 0; j < n; ++j, ++row) {
      const auto s = state[static_cast<std::size_t>(j)];
      const double sign = s == VarState::at_zero ? -1.0 : 1.0;
      margin.matrix.row(row).head(k) = sign * c_tight.col(j).transpose();
      margin.rhs[row] = sign * lp.objective[j];
      if (s == VarState::free) {
        margin.senses.push_back(Sense::equal);
      } else {
        margin.matrix(row, k) = 1.0;
        margin.senses.push_back(Sense::less_equal);
      }
    }
    margin.matrix(row, k) = 1.0;
    margin.rhs[row] = 1.0;
    margin.senses.push_back(Sense::less_equal);

    const LinearProgramResult best =
        solve_linear_program(margin, tol.simplex_max_iterations, tol.feasibility);
    if (best.status != LinearProgramResult::Status::optimal || best.x[k] <= 0.0) {
      throw SolverError("no strictly complementary dual point for the detected face structure");
    }
    VectorXd lambda_tight = best.x.head(k);

    // Center on the dual optimal face: lambda > 0, signed reduced values, r_free = 0.
    BarrierProblem centering;
    Eigen::Index num_fixed = 0;
    Eigen::Index num_free = 0;
    for (auto s : state) (s == VarState::free ? num_free : num_fixed)++;
    centering.inequality_matrix = MatrixXd::Zero(k + num_fixed, k);
    centering.inequality_rhs = VectorXd::Zero(k + num_fixed);
    centering.equality_matrix = MatrixXd::Zero(num_free, k);
    centering.equality_rhs = VectorXd::Zero(num_free);
    centering.inequality_matrix.topRows(k) = -MatrixXd::Identity(k, k);
    Eigen::Index g_row = k;
    Eigen::Index e_row = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto s = state[static_cast<std::size_t>(j)];
      if (s == VarState::free) {
        centering.equality_matrix.row(e_row) = c_tight.col(j).transpose();
        centering.equality_rhs[e_row++] = lp.objective[j];
      } else {
        const double sign = s == VarState::at_zero ? -1.0 : 1.0;
        centering.inequality_matrix.row(g_row) = sign * c_tight.col(j).transpose();
        centering.inequality_rhs[g_row++] = sign * lp.objective[j];
      }
    }
    try {
      NewtonOptions options{tol.newton_gradient, tol.newton_max_iterations};
      lambda_tight = maximize_log_barrier(centering, lambda_tight, options).x;
    } catch (const SolverError&) {
      // Unbounded dual face (a depleted resource): keep the max-margin point.
    }
    for (Eigen::Index r = 0; r < k; ++r) {
      dual.lambda[static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)])] = lambda_tight[r];
    }
  }
  dual.reduced_values = lp.objective - lp.resource_matrix.transpose() * dual.lambda;
  return dual;
}

BindingSet binding_set(const PackedLP& lp, const LPSolution& sol, double tol) {
  const VectorXd slack = lp.rhs - lp.resource_matrix * sol.y;
  BindingSet set;
  for (Eigen::Index i = 0; i < slack.size(); ++i) {
    (slack[i] <= tol ? set.binding : set.nonbinding).push_back(static_cast<std::size_t>(i));
  }
  return set;
}

}  // namespace fairalloc::lp
