#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fairalloc/errors.hpp"
#include "fairalloc/lp/lp_core.hpp"
#include "fairalloc/oracle/oracles.hpp"
#include "test_support.hpp"

namespace testsupport {

using fairalloc::lp::PackedLP;

struct OracleAgreement {
  double objective_gap = 0.0;   // |center value - vertex value|
  double hull_residual = 0.0;   // L1 distance of the center to the vertex hull
  double worst_margin = std::numeric_limits<double>::infinity();  // min over mixtures of B(center) - B(mix)
  bool center_interior = true;  // barrier finite at the center
  std::size_t vertices = 0;
};

/// Compares the analytic center with brute-force vertex enumeration.
inline OracleAgreement check_center_against_vertices(const PackedLP& lp, std::mt19937_64& gen, int mixtures) {
  namespace lpc = fairalloc::lp;
  namespace orc = fairalloc::oracle;
  OracleAgreement out;
  const auto center = lpc::analytic_center(lp);
  const auto vertex = lpc::solve_vertex(lp);
  out.objective_gap = std::abs(center.objective_value - vertex.objective_value);
  const auto set = orc::enumerate_primal_optimal_vertices(lp);
  out.vertices = set.vertices.size();
  out.hull_residual = orc::hull_residual(set.vertices, center.y);
  const auto implicit = orc::implicit_equalities_from_vertices(lp, set);
  double at_center;
  try {
    at_center = orc::barrier_value(lp, center.y, implicit);
  } catch (const fairalloc::NonInteriorPoint&) {
    out.center_interior = false;
    out.worst_margin = -std::numeric_limits<double>::infinity();
    return out;
  }
  const auto k = static_cast<Eigen::Index>(set.vertices.size());
  Eigen::MatrixXd v(lp.objective.size(), k);
  for (Eigen::Index c = 0; c < k; ++c) v.col(c) = set.vertices[static_cast<std::size_t>(c)];
  const Eigen::VectorXd centroid = v.rowwise().mean();
  for (int s = 0; s < mixtures; ++s) {
    const Eigen::VectorXd mix = 0.99 * (v * random_weights(gen, k)) + 0.01 * centroid;
    out.worst_margin = std::min(out.worst_margin, at_center - orc::barrier_value(lp, mix, implicit));
  }
  return out;
}

/// Number of coordinates breaking one of the three strict-complementarity
/// equivalences at (analytic center, interior dual).
inline int complementarity_violations(const PackedLP& lp, double tol, std::string* detail = nullptr) {
  namespace lpc = fairalloc::lp;
  const auto face = lpc::analyze_optimal_face(lp);
  const auto y = lpc::analytic_center(lp, face).y;
  const auto r = lpc::interior_dual(lp, face).reduced_values;
  int bad = 0;
  for (Eigen::Index j = 0; j < y.size(); ++j) {
    const bool at_one = y[j] >= lp.upper_bounds[j] - tol;
    const bool at_zero = y[j] <= tol;
    const bool inside = !at_one && !at_zero;
    const bool ok = (at_one == (r[j] > tol)) && (at_zero == (r[j] < -tol)) && (inside == (std::abs(r[j]) <= tol));
    if (!ok) {
      ++bad;
      if (detail) *detail += " j=" + std::to_string(j) + " y=" + std::to_string(y[j]) + " r=" + std::to_string(r[j]);
    }
  }
  return bad;
}

struct LipschitzOutcome {
  int directions = 0;
  int violations = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = 0.0;
};

/// For random unit rhs directions that keep the face structure and binding set
/// at both step sizes, the displacement ratio d(1e-2) / d(1e-3) must lie within
/// a factor 1.5 of 10.
inline LipschitzOutcome lipschitz_ratios(const PackedLP& lp, std::mt19937_64& gen, int wanted) {
  namespace lpc = fairalloc::lp;
  LipschitzOutcome out;
  const auto base_face = lpc::analyze_optimal_face(lp);
  const auto base = lpc::analytic_center(lp, base_face);
  const auto base_binding = lpc::binding_set(lp, base);
  constexpr double kSmall = 1e-3, kLarge = 1e-2;
  for (int tries = 0; out.directions < wanted && tries < 50 * wanted; ++tries) {
    const Eigen::VectorXd dir = random_unit(gen, lp.rhs.size());
    const PackedLP near = lp.with_rhs((lp.rhs + kSmall * dir).cwiseMax(0.0));
    const PackedLP far = lp.with_rhs((lp.rhs + kLarge * dir).cwiseMax(0.0));
    const auto near_face = lpc::analyze_optimal_face(near);
    const auto far_face = lpc::analyze_optimal_face(far);
    if (!(near_face.implicit == base_face.implicit) || !(far_face.implicit == base_face.implicit)) continue;
    const auto yn = lpc::analytic_center(near, near_face);
    const auto yf = lpc::analytic_center(far, far_face);
    if (!(lpc::binding_set(near, yn) == base_binding) || !(lpc::binding_set(far, yf) == base_binding)) continue;
    ++out.directions;
    const double d1 = (yn.y - base.y).norm();
    const double d2 = (yf.y - base.y).norm();
    if (d1 <= 1e-12 && d2 <= 1e-11) continue;  // center locally constant along dir
    const double ratio = d2 / std::max(d1, 1e-300);
    out.min_ratio = std::min(out.min_ratio, ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
    if (ratio < (kLarge / kSmall) / 1.5 || ratio > (kLarge / kSmall) * 1.5) ++out.violations;
  }
  return out;
}

}  // namespace testsupport
