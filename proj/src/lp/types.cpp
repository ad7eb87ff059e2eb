#include "fairalloc/lp/types.hpp"

#include <string>

#include "fairalloc/errors.hpp"

namespace fairalloc::lp {

PackedLP::PackedLP(VectorXd objective_in, MatrixXd resource_matrix_in, VectorXd rhs_in)
    : objective(std::move(objective_in)),
      resource_matrix(std::move(resource_matrix_in)),
      rhs(std::move(rhs_in)),
      upper_bounds(VectorXd::Ones(objective.size())) {
  validate();
}

PackedLP::PackedLP(VectorXd objective_in, MatrixXd resource_matrix_in, VectorXd rhs_in,
                   VectorXd upper_bounds_in)
    : objective(std::move(objective_in)),
      resource_matrix(std::move(resource_matrix_in)),
      rhs(std::move(rhs_in)),
      upper_bounds(std::move(upper_bounds_in)) {
  validate();
}

void PackedLP::validate() const {
  const Eigen::Index n = objective.size();
  const Eigen::Index m = rhs.size();
  if (n < 1 || m < 1) throw InputError("packed LP needs at least one variable and one resource");
  if (resource_matrix.rows() != m || resource_matrix.cols() != n) {
    throw InputError("packed LP: resource matrix is " + std::to_string(resource_matrix.rows()) +
                     "x" + std::to_string(resource_matrix.cols()) + ", expected " +
                     std::to_string(m) + "x" + std::to_string(n));
  }
  if (upper_bounds.size() != n) throw InputError("packed LP: upper bounds length mismatch");
  if (!objective.allFinite() || !resource_matrix.allFinite() || !rhs.allFinite() ||
      !upper_bounds.allFinite()) {
    throw InputError("packed LP: non-finite data");
  }
  if (objective.minCoeff() < 0.0 || resource_matrix.minCoeff() < 0.0 || rhs.minCoeff() < 0.0 ||
      upper_bounds.minCoeff() < 0.0) {
    throw InputError("packed LP: data must be non-negative");
  }
}

PackedLP PackedLP::with_rhs(const VectorXd& new_rhs) const {
  return PackedLP(objective, resource_matrix, new_rhs, upper_bounds);
}

}  // namespace fairalloc::lp
