#include "mcboost/master_solvers.hpp"

#include <cmath>
#include <utility>

namespace mcboost {

// The LP solved here is the dual of
//     min_W>=0  sum_i xi_i + nu * |W|_1
//     s.t.      xi_i >= 1 - rho_{ir}(W)   for r != y_i,   xi_i >= 0.
// Its variables are the example weights U (one simplex row per example); each
// stump contributes one <= row per class, so column generation appends rows.
// Row multipliers of those <= rows recover W, and the simplex basis carries
// over between boosting iterations.

namespace {

inline Eigen::Index var_index(Eigen::Index example, int cls, int num_classes) {
  return example * num_classes + cls;
}

}  // namespace

HingeLpMaster::HingeLpMaster(std::vector<int> labels, int num_classes, double nu)
    : labels_(std::move(labels)),
      num_classes_(num_classes),
      nu_(nu),
      m_(static_cast<Eigen::Index>(labels_.size())) {
  if (m_ == 0) throw InputError("hinge master needs at least one example");
  if (num_classes_ < 2) throw InputError("hinge master needs at least two classes");
  if (!(nu_ > 0.0)) throw InputError("regularization strength must be positive");

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(m_ * num_classes_);
  for (Eigen::Index i = 0; i < m_; ++i) {
    cost[var_index(i, labels_[static_cast<size_t>(i)], num_classes_)] = 1.0;
  }
  lp_ = std::make_unique<SimplexSolver>(m_ * num_classes_, std::move(cost));

  std::vector<std::pair<Eigen::Index, double>> coefficients(static_cast<size_t>(num_classes_));
  for (Eigen::Index i = 0; i < m_; ++i) {
    for (int r = 0; r < num_classes_; ++r) {
      coefficients[static_cast<size_t>(r)] = {var_index(i, r, num_classes_), 1.0};
    }
    lp_->add_row(coefficients, RowSense::Equal, 1.0);
  }
}

void HingeLpMaster::add_column(const Eigen::VectorXd& h) {
  if (h.size() != m_) throw InputError("stump response length does not match example count");
  std::vector<std::pair<Eigen::Index, double>> coefficients(static_cast<size_t>(m_));
  for (int s = 0; s < num_classes_; ++s) {
    double label_sum = 0.0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      coefficients[static_cast<size_t>(i)] = {var_index(i, s, num_classes_), -h[i]};
      if (labels_[static_cast<size_t>(i)] == s) label_sum += h[i];
    }
    lp_->add_row(coefficients, RowSense::LessEq, nu_ - label_sum);
  }
  columns_.push_back(h);
}

MasterSolution HingeLpMaster::solve() {
  const Eigen::Index k = num_classes_;
  const Eigen::Index t = num_columns();
  const Eigen::Index rows = m_ + t * k;

  LpSolution sol;
  if (!solved_once_) {
    // Start from the basis {U_{i,y_i}} + all stump-row slacks: it is feasible
    // (U = one-hot labels, slacks = nu) and block-triangular, so no phase 1.
    std::vector<Eigen::Index> basic;
    basic.reserve(static_cast<size_t>(rows));
    for (Eigen::Index i = 0; i < m_; ++i) {
      basic.push_back(var_index(i, labels_[static_cast<size_t>(i)], num_classes_));
    }
    for (Eigen::Index row = m_; row < rows; ++row) basic.push_back(m_ * k + row);
    sol = lp_->solve_from_basis(std::move(basic));
    solved_once_ = true;
  } else {
    sol = lp_->resolve();
  }
  if (sol.status != LpStatus::Optimal) {
    throw ConvergenceError("hinge master linear program did not reach optimality", 0.0, 0.0,
                           sol.iterations);
  }

  MasterSolution out;
  out.iterations = sol.iterations;
  out.u.resize(m_, k);
  for (Eigen::Index i = 0; i < m_; ++i) {
    for (int r = 0; r < num_classes_; ++r) {
      out.u(i, r) = std::max(sol.x[var_index(i, r, num_classes_)], 0.0);
    }
  }
  out.w.resize(t, k);
  for (Eigen::Index j = 0; j < t; ++j) {
    for (int s = 0; s < num_classes_; ++s) {
      out.w(j, s) = std::max(-sol.y[m_ + j * k + s], 0.0);
    }
  }

  out.dual_objective = static_cast<double>(m_) - sol.objective;

  MatrixXd scores = MatrixXd::Zero(m_, k);
  for (Eigen::Index j = 0; j < t; ++j) {
    scores.noalias() += columns_[static_cast<size_t>(j)] * out.w.row(j);
  }
  const MarginMatrix margins = margins_from_scores(scores, labels_, MarginMode::Pairwise);
  out.objective = loss_value(LossKind::Hinge, margins) + nu_ * norm_value(RegKind::L1, out.w);
  return out;
}

}  // namespace mcboost
