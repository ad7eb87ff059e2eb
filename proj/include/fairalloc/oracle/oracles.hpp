#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fairalloc/lp/types.hpp"

// Brute-force verifiers. Enumeration and barrier evaluation use plain dense
// linear algebra only; hull_residual solves one small auxiliary LP with the
// generic two-phase simplex, never the face/barrier path it is used to check.
namespace fairalloc::oracle {

using lp::PackedLP;
using Eigen::VectorXd;

struct VertexSet {
  std::vector<VectorXd> vertices;
  double face_objective = 0.0;
};

struct DualVertexSet {
  std::vector<VectorXd> duals;
  double dual_optimum = 0.0;
};

struct NondegeneracyReport {
  bool holds = true;
  std::vector<std::size_t> binding;
  /// A violating optimal dual vertex and the binding row where it is ~0.
  std::optional<VectorXd> witness_lambda;
  std::optional<std::size_t> witness_row;
};

struct OracleLimits {
  std::size_t max_vars = 8;
  std::size_t max_resources = 4;
  double tol = 1e-9;
};

/// All optimal basic feasible solutions of the standard form, by basis enumeration.
VertexSet enumerate_primal_optimal_vertices(const PackedLP& lp, const OracleLimits& limits = {});

/// Optimal vertices of min b'l + sum_j (obj_j - col_j'l)_+ over l >= 0: every
/// point where m independent hyperplanes among {l_i = 0} and
/// {col_j'l = obj_j} meet, filtered to the minimum.
DualVertexSet enumerate_dual_optimal_vertices(const PackedLP& lp, const OracleLimits& limits = {});

/// min b'l + sum_j (obj_j - col_j'l)_+
double dual_objective(const PackedLP& lp, const VectorXd& lambda);

/// Assumption check: every optimal dual vertex is > tol on every binding row.
/// `binding` is the DLP binding set (usually from the analytic center).
NondegeneracyReport check_dual_nondegeneracy(const PackedLP& lp,
                                             const std::vector<std::size_t>& binding,
                                             const OracleLimits& limits = {});

/// Sum of log over the slacks that are not implicit equalities. Throws
/// NonInteriorPoint if any of them is <= 0.
double barrier_value(const PackedLP& lp, const VectorXd& y, const lp::ImplicitEqualities& implicit);

/// Implicit equalities read off the enumerated optimal vertices: a slack is an
/// implicit equality iff it is <= tol at every optimal vertex.
lp::ImplicitEqualities implicit_equalities_from_vertices(const PackedLP& lp, const VertexSet& set,
                                                         double tol = 1e-7);

/// min ||sum_k w_k v_k - x||_1 over w >= 0, sum w = 1 (zero iff x is in the hull).
double hull_residual(const std::vector<VectorXd>& points, const VectorXd& x);

}  // namespace fairalloc::oracle
