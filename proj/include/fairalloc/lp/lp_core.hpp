#pragma once

#include <vector>

#include "fairalloc/lp/types.hpp"

namespace fairalloc::lp {

StandardFormLP to_standard_form(const PackedLP& lp);

/// Optimal basic solution from Bland-rule simplex on the standard form,
/// starting at the all-slack basis y = 0.
LPSolution solve_vertex(const PackedLP& lp, const Tolerances& tol = {});

double optimal_value(const PackedLP& lp, const Tolerances& tol = {});

/// Everything the analytic center needs to know about the optimal face.
struct OptimalFace {
  double opt_value = 0.0;
  VectorXd vertex;  // first optimal vertex found by simplex
  ImplicitEqualities implicit;
  /// Optimal points visited while maximizing each slack; every slack that is
  /// not an implicit equality exceeds the threshold at one of them.
  std::vector<VectorXd> witnesses;
  /// Centroid of `witnesses`: strictly positive on every non-implicit slack.
  VectorXd interior_point;
};

/// Simplex to optimality, then one warm-started slack-maximization over the
/// optimal face for every standard-form column not already seen positive.
OptimalFace analyze_optimal_face(const PackedLP& lp, const Tolerances& tol = {});

/// Throws InputError if `opt_value` is not the optimum of `lp`.
ImplicitEqualities detect_implicit_equalities(const PackedLP& lp, double opt_value,
                                              const Tolerances& tol = {});

/// Maximizer of the log-barrier of all non-implicit slacks over the optimal face.
LPSolution analytic_center(const PackedLP& lp, const Tolerances& tol = {});
LPSolution analytic_center(const PackedLP& lp, const OptimalFace& face, const Tolerances& tol = {});

/// Strictly complementary optimal dual: lambda_i > 0 exactly on the tight rows.
/// The point is the analytic center of the dual optimal face when that face is
/// bounded, otherwise the max-margin strictly complementary point.
DualPoint interior_dual(const PackedLP& lp, const Tolerances& tol = {});
DualPoint interior_dual(const PackedLP& lp, const OptimalFace& face, const Tolerances& tol = {});

/// Rows with slack <= tol at `sol` (ties count as binding).
BindingSet binding_set(const PackedLP& lp, const LPSolution& sol, double tol = 1e-7);

LPSolution make_solution(const PackedLP& lp, VectorXd y, SolutionKind kind);

}  // namespace fairalloc::lp
