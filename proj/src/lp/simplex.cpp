#include "fairalloc/lp/simplex.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fairalloc/errors.hpp"

namespace fairalloc::lp {

namespace {

constexpr double kPivotTol = 1e-12;
constexpr double kRatioTieTol = 1e-13;

}  // namespace

Tableau::Tableau(Eigen::MatrixXd a, Eigen::VectorXd b, std::vector<std::size_t> basis)
    : body_(std::move(a)), rhs_(std::move(b)), basis_(std::move(basis)) {
  if (static_cast<std::size_t>(body_.rows()) != basis_.size() || body_.rows() != rhs_.size()) {
    throw InputError("tableau: basis size does not match row count");
  }
  in_basis_.assign(cols(), 0);
  for (std::size_t col : basis_) {
    if (col >= cols()) throw InputError("tableau: basis column out of range");
    in_basis_[col] = 1;
  }
  cost_ = Eigen::VectorXd::Zero(body_.cols());
  reduced_ = Eigen::VectorXd::Zero(body_.cols());
}

void Tableau::set_objective(const Eigen::VectorXd& cost) {
  if (static_cast<std::size_t>(cost.size()) != cols()) {
    throw InputError("tableau: objective length does not match column count");
  }
  cost_ = cost;
  reduced_ = cost_;
  value_ = 0.0;
  for (std::size_t r = 0; r < rows(); ++r) {
    const double cb = cost_[static_cast<Eigen::Index>(basis_[r])];
    if (cb != 0.0) {
      reduced_.noalias() -= cb * body_.row(static_cast<Eigen::Index>(r)).transpose();
      value_ += cb * rhs_[static_cast<Eigen::Index>(r)];
    }
  }
  for (std::size_t col : basis_) reduced_[static_cast<Eigen::Index>(col)] = 0.0;
}

void Tableau::pivot(std::size_t row, std::size_t col) {
  const auto r = static_cast<Eigen::Index>(row);
  const auto c = static_cast<Eigen::Index>(col);
  const double piv = body_(r, c);
  body_.row(r) /= piv;
  rhs_[r] /= piv;
  body_(r, c) = 1.0;
  for (Eigen::Index i = 0; i < body_.rows(); ++i) {
    if (i == r) continue;
    const double f = body_(i, c);
    if (f == 0.0) continue;
    body_.row(i) -= f * body_.row(r);
    rhs_[i] -= f * rhs_[r];
    body_(i, c) = 0.0;
    // Degenerate pivots leave round-off below zero; the basis is still feasible.
    if (rhs_[i] < 0.0 && rhs_[i] > -1e-12) rhs_[i] = 0.0;
  }
  const double d = reduced_[c];
  if (d != 0.0) {
    reduced_.noalias() -= d * body_.row(r).transpose();
    value_ += d * rhs_[r];
  }
  reduced_[c] = 0.0;
  in_basis_[basis_[row]] = 0;
  basis_[row] = col;
  in_basis_[col] = 1;
}

Tableau::Status Tableau::maximize(const std::vector<char>& allowed, int max_pivots, double eps) {
  for (int iter = 0;; ++iter) {
    std::size_t entering = cols();
    for (std::size_t j = 0; j < cols(); ++j) {
      if (allowed[j] && !in_basis_[j] && reduced_[static_cast<Eigen::Index>(j)] > eps) {
        entering = j;
        break;
      }
    }
    if (entering == cols()) return Status::optimal;
    if (iter >= max_pivots) {
      throw IterationLimit("simplex exceeded " + std::to_string(max_pivots) + " pivots");
    }

    const auto c = static_cast<Eigen::Index>(entering);
    std::size_t leaving = rows();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < rows(); ++r) {
      const double a = body_(static_cast<Eigen::Index>(r), c);
      if (a <= kPivotTol) continue;
      const double ratio = rhs_[static_cast<Eigen::Index>(r)] / a;
      if (ratio < best - kRatioTieTol) {
        best = ratio;
        leaving = r;
      } else if (ratio <= best + kRatioTieTol && basis_[r] < basis_[leaving]) {
        leaving = r;
      }
    }
    if (leaving == rows()) return Status::unbounded;
    pivot(leaving, entering);
  }
}

void Tableau::drop_row(std::size_t row) {
  const auto r = static_cast<Eigen::Index>(row);
  const Eigen::Index last = body_.rows() - 1;
  if (r < last) {
    body_.middleRows(r, last - r) = body_.bottomRows(last - r).eval();
    rhs_.segment(r, last - r) = rhs_.tail(last - r).eval();
  }
  body_.conservativeResize(last, Eigen::NoChange);
  rhs_.conservativeResize(last);
  in_basis_[basis_[row]] = 0;
  basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(row));
}

Eigen::VectorXd Tableau::primal() const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(body_.cols());
  for (std::size_t r = 0; r < rows(); ++r) {
    x[static_cast<Eigen::Index>(basis_[r])] = rhs_[static_cast<Eigen::Index>(r)];
  }
  return x;
}

LinearProgramResult solve_linear_program(const LinearProgram& program, int max_pivots,
                                         double feasibility_tol) {
  const Eigen::Index m = program.matrix.rows();
  const Eigen::Index n = program.matrix.cols();
  if (program.objective.size() != n || program.rhs.size() != m ||
      static_cast<Eigen::Index>(program.senses.size()) != m) {
    throw InputError("linear program: inconsistent dimensions");
  }

  Eigen::Index num_slack = 0;
  for (Sense s : program.senses) num_slack += (s != Sense::equal) ? 1 : 0;

  // Rows are flipped to make rhs >= 0; a row whose slack then has coefficient +1
  // starts with that slack basic, every other row gets an artificial.
  std::vector<double> sign(static_cast<std::size_t>(m));
  std::vector<Eigen::Index> slack_col(static_cast<std::size_t>(m), -1);
  std::vector<char> needs_artificial(static_cast<std::size_t>(m), 0);
  Eigen::Index num_artificial = 0;
  {
    Eigen::Index next_slack = n;
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      sign[ui] = program.rhs[i] < 0.0 ? -1.0 : 1.0;
      if (program.senses[ui] != Sense::equal) slack_col[ui] = next_slack++;
      const double slack_coef = program.senses[ui] == Sense::less_equal      ? 1.0
                                : program.senses[ui] == Sense::greater_equal ? -1.0
                                                                             : 0.0;
      if (slack_coef * sign[ui] <= 0.0) {
        needs_artificial[ui] = 1;
        ++num_artificial;
      }
    }
  }

  const Eigen::Index first_artificial = n + num_slack;
  const Eigen::Index total = first_artificial + num_artificial;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, total);
  Eigen::VectorXd b(m);
  std::vector<std::size_t> basis(static_cast<std::size_t>(m));
  Eigen::Index next_artificial = first_artificial;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    a.row(i).head(n) = sign[ui] * program.matrix.row(i);
    b[i] = sign[ui] * program.rhs[i];
    if (slack_col[ui] >= 0) {
      a(i, slack_col[ui]) = sign[ui] * (program.senses[ui] == Sense::less_equal ? 1.0 : -1.0);
    }
    if (needs_artificial[ui]) {
      a(i, next_artificial) = 1.0;
      basis[ui] = static_cast<std::size_t>(next_artificial++);
    } else {
      basis[ui] = static_cast<std::size_t>(slack_col[ui]);
    }
  }

  Tableau tableau(std::move(a), std::move(b), std::move(basis));
  std::vector<char> allowed(static_cast<std::size_t>(total), 1);
  LinearProgramResult result;

  if (num_artificial > 0) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total);
    phase1.tail(num_artificial).setConstant(-1.0);
    tableau.set_objective(phase1);
    tableau.maximize(allowed, max_pivots);
    if (tableau.objective_value() < -feasibility_tol) {
      result.status = LinearProgramResult::Status::infeasible;
      return result;
    }
    // Pivot remaining (zero-valued) artificials out, or drop their redundant rows.
    for (std::size_t r = 0; r < tableau.rows();) {
      if (static_cast<Eigen::Index>(tableau.basis()[r]) < first_artificial) {
        ++r;
        continue;
      }
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < first_artificial; ++j) {
        if (std::abs(tableau.body()(static_cast<Eigen::Index>(r), j)) > 1e-9) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        tableau.pivot(r, static_cast<std::size_t>(col));
        ++r;
      } else {
        tableau.drop_row(r);
      }
    }
    for (Eigen::Index j = first_artificial; j < total; ++j) allowed[static_cast<std::size_t>(j)] = 0;
  }

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(total);
  cost.head(n) = program.objective;
  tableau.set_objective(cost);
  if (tableau.maximize(allowed, max_pivots) == Tableau::Status::unbounded) {
    result.status = LinearProgramResult::Status::unbounded;
    return result;
  }
  result.status = LinearProgramResult::Status::optimal;
  result.x = tableau.primal().head(n);
  result.objective_value = program.objective.dot(result.x);
  return result;
}

}  // namespace fairalloc::lp
