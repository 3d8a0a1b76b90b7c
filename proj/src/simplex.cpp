#include "mcboost/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mcboost {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-10;
constexpr double kFeasTol = 1e-9;
constexpr double kDegenerateStep = 1e-11;
constexpr int kRefactorEvery = 256;
constexpr int kStallLimit = 500;

}  // namespace

SimplexSolver::SimplexSolver(Eigen::Index num_vars, Eigen::VectorXd cost)
    : nv_(num_vars), cost_(std::move(cost)), cols_(static_cast<size_t>(num_vars)) {
  if (cost_.size() != nv_) {
    cost_ = Eigen::VectorXd::Zero(nv_);
  }
}

void SimplexSolver::add_row(const std::vector<std::pair<Eigen::Index, double>>& coefficients,
                            RowSense sense, double rhs) {
  const Eigen::Index row = num_rows();
  rows_.emplace_back();
  for (const auto& [var, value] : coefficients) {
    if (value == 0.0) continue;
    cols_[static_cast<size_t>(var)].emplace_back(row, value);
    rows_.back().emplace_back(var, value);
  }
  rhs_.push_back(rhs);
  sense_.push_back(sense);
}

double SimplexSolver::column_cost(Eigen::Index j) const {
  if (phase1_) return j >= art_base_ ? 1.0 : 0.0;
  return j < nv_ ? cost_[j] : 0.0;
}

double SimplexSolver::column_dot(Eigen::Index j, const Eigen::VectorXd& v) const {
  if (j < nv_) {
    double s = 0.0;
    for (const auto& [row, value] : cols_[static_cast<size_t>(j)]) s += value * v[row];
    return s;
  }
  if (j < art_base_) return v[j - nv_];
  return art_sign_[static_cast<size_t>(j - art_base_)] * v[j - art_base_];
}

void SimplexSolver::ftran(Eigen::Index j, Eigen::VectorXd& out) const {
  if (j < nv_) {
    out.setZero();
    for (const auto& [row, value] : cols_[static_cast<size_t>(j)]) out += value * binv_.col(row);
  } else if (j < art_base_) {
    out = binv_.col(j - nv_);
  } else {
    out = art_sign_[static_cast<size_t>(j - art_base_)] * binv_.col(j - art_base_);
  }
}

void SimplexSolver::refactor() {
  const Eigen::Index m = num_rows();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index t = 0; t < m; ++t) {
    const Eigen::Index j = basic_[static_cast<size_t>(t)];
    if (j < nv_) {
      for (const auto& [row, value] : cols_[static_cast<size_t>(j)]) b(row, t) = value;
    } else if (j < art_base_) {
      b(j - nv_, t) = 1.0;
    } else {
      b(j - art_base_, t) = art_sign_[static_cast<size_t>(j - art_base_)];
    }
  }
  binv_ = b.partialPivLu().inverse();
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(rhs_.data(), m);
  xb_.noalias() = binv_ * rhs;
  pivots_since_refactor_ = 0;
}

void SimplexSolver::pivot(Eigen::Index row, Eigen::Index entering, const Eigen::VectorXd& w) {
  const Eigen::Index leaving = basic_[static_cast<size_t>(row)];
  basis_pos_[static_cast<size_t>(leaving)] = -1;
  basic_[static_cast<size_t>(row)] = entering;
  basis_pos_[static_cast<size_t>(entering)] = row;

  const double piv = w[row];
  binv_.row(row) /= piv;
  xb_[row] /= piv;
  Eigen::VectorXd factor = w;
  factor[row] = 0.0;
  binv_.noalias() -= factor * binv_.row(row);
  xb_.noalias() -= factor * xb_[row];

  if (++pivots_since_refactor_ >= kRefactorEvery) refactor();
}

void SimplexSolver::set_basis(std::vector<Eigen::Index> basic) {
  const Eigen::Index m = num_rows();
  basic_ = std::move(basic);
  basis_rows_ = m;
  art_base_ = nv_ + m;
  if (art_sign_.size() != static_cast<size_t>(m)) art_sign_.assign(static_cast<size_t>(m), 1.0);
  basis_pos_.assign(static_cast<size_t>(nv_ + 2 * m), -1);
  for (Eigen::Index t = 0; t < m; ++t) {
    basis_pos_[static_cast<size_t>(basic_[static_cast<size_t>(t)])] = t;
  }
  refactor();
}

bool SimplexSolver::price(const Eigen::VectorXd& y, bool bland, Eigen::Index& entering,
                          double& best) const {
  entering = -1;
  best = -kReducedCostTol;
  const Eigen::Index m = num_rows();
  for (Eigen::Index j = 0; j < nv_ + m; ++j) {
    if (basis_pos_[static_cast<size_t>(j)] >= 0) continue;
    if (j >= nv_ && sense_[static_cast<size_t>(j - nv_)] != RowSense::LessEq) continue;
    const double d = column_cost(j) - column_dot(j, y);
    if (d < best) {
      entering = j;
      best = d;
      if (bland) return true;
    }
  }
  return entering >= 0;
}

LpStatus SimplexSolver::run_primal(int& iterations) {
  const Eigen::Index m = num_rows();
  const int max_iter = static_cast<int>(50 * m) + 10000;
  bool bland = false;
  int stall = 0;
  Eigen::VectorXd cb(m), y(m), w(m);
  double last_objective = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < max_iter; ++iter) {
    for (Eigen::Index t = 0; t < m; ++t) cb[t] = column_cost(basic_[static_cast<size_t>(t)]);
    y.noalias() = binv_.transpose() * cb;

    Eigen::Index entering;
    double reduced_cost;
    if (!price(y, bland, entering, reduced_cost)) {
      ++iterations;
      return LpStatus::Optimal;
    }

    ftran(entering, w);

    Eigen::Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_piv = 0.0;
    for (Eigen::Index t = 0; t < m; ++t) {
      const Eigen::Index jb = basic_[static_cast<size_t>(t)];
      const double wt = w[t];
      double ratio;
      double piv_mag;
      if (!phase1_ && jb >= art_base_) {
        // A leftover artificial sits at zero; kick it out on any usable pivot.
        if (std::abs(wt) <= kPivotTol) continue;
        ratio = 0.0;
        piv_mag = std::abs(wt);
      } else {
        if (wt <= kPivotTol) continue;
        ratio = std::max(xb_[t], 0.0) / wt;
        piv_mag = wt;
      }
      if (ratio < best_ratio - 1e-12) {
        best_ratio = ratio;
        best_piv = piv_mag;
        leave = t;
      } else if (ratio < best_ratio + 1e-12 && leave >= 0) {
        if (piv_mag > best_piv * (1.0 + 1e-9) ||
            (piv_mag > best_piv * (1.0 - 1e-9) && jb < basic_[static_cast<size_t>(leave)])) {
          best_ratio = std::min(best_ratio, ratio);
          best_piv = piv_mag;
          leave = t;
        }
      }
    }
    if (leave < 0) return LpStatus::Unbounded;

    stall = best_ratio < kDegenerateStep ? stall + 1 : 0;
    if (stall > kStallLimit) bland = true;

    pivot(leave, entering, w);
    ++iterations;

    if (bland) {
      double objective = 0.0;
      for (Eigen::Index t = 0; t < m; ++t) {
        objective += column_cost(basic_[static_cast<size_t>(t)]) * xb_[t];
      }
      if (objective < last_objective - 1e-12) {
        bland = false;
        stall = 0;
      }
      last_objective = std::min(last_objective, objective);
    }
  }
  return LpStatus::IterationLimit;
}

LpStatus SimplexSolver::run_dual(int& iterations) {
  const Eigen::Index m = num_rows();
  const int max_iter = static_cast<int>(20 * m) + 5000;
  Eigen::VectorXd cb(m), y(m), w(m);

  for (int iter = 0; iter < max_iter; ++iter) {
    Eigen::Index leave = -1;
    double most_negative = -kFeasTol;
    for (Eigen::Index t = 0; t < m; ++t) {
      if (xb_[t] < most_negative) {
        most_negative = xb_[t];
        leave = t;
      }
    }
    if (leave < 0) {
      ++iterations;
      return LpStatus::Optimal;
    }

    for (Eigen::Index t = 0; t < m; ++t) cb[t] = column_cost(basic_[static_cast<size_t>(t)]);
    y.noalias() = binv_.transpose() * cb;
    const Eigen::VectorXd sigma = binv_.row(leave);

    Eigen::Index entering = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_alpha = 0.0;
    for (Eigen::Index j = 0; j < nv_ + m; ++j) {
      if (basis_pos_[static_cast<size_t>(j)] >= 0) continue;
      if (j >= nv_ && sense_[static_cast<size_t>(j - nv_)] != RowSense::LessEq) continue;
      const double alpha = column_dot(j, sigma);
      if (alpha >= -kPivotTol) continue;
      const double d = std::max(column_cost(j) - column_dot(j, y), 0.0);
      const double ratio = d / (-alpha);
      if (ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 && -alpha > std::abs(best_alpha))) {
        best_ratio = ratio;
        best_alpha = alpha;
        entering = j;
      }
    }
    if (entering < 0) return LpStatus::Infeasible;

    ftran(entering, w);
    pivot(leave, entering, w);
    ++iterations;
  }
  return LpStatus::IterationLimit;
}

LpSolution SimplexSolver::extract(LpStatus status, int iterations) {
  LpSolution out;
  out.status = status;
  out.iterations = iterations;
  const Eigen::Index m = num_rows();
  out.x = Eigen::VectorXd::Zero(nv_);
  if (status == LpStatus::Optimal) {
    for (Eigen::Index t = 0; t < m; ++t) {
      const Eigen::Index j = basic_[static_cast<size_t>(t)];
      if (j < nv_) out.x[j] = std::max(xb_[t], 0.0);
    }
    Eigen::VectorXd cb(m);
    phase1_ = false;
    for (Eigen::Index t = 0; t < m; ++t) cb[t] = column_cost(basic_[static_cast<size_t>(t)]);
    out.y.noalias() = binv_.transpose() * cb;
    out.objective = cost_.dot(out.x);
  } else {
    out.y = Eigen::VectorXd::Zero(m);
  }
  return out;
}

LpSolution SimplexSolver::solve() {
  const Eigen::Index m = num_rows();
  art_base_ = nv_ + m;
  art_sign_.assign(static_cast<size_t>(m), 1.0);
  std::vector<Eigen::Index> basic(static_cast<size_t>(m));
  bool has_artificial = false;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (sense_[static_cast<size_t>(i)] == RowSense::LessEq && rhs_[static_cast<size_t>(i)] >= 0.0) {
      basic[static_cast<size_t>(i)] = nv_ + i;
    } else {
      basic[static_cast<size_t>(i)] = art_base_ + i;
      art_sign_[static_cast<size_t>(i)] = rhs_[static_cast<size_t>(i)] >= 0.0 ? 1.0 : -1.0;
      has_artificial = true;
    }
  }
  set_basis(std::move(basic));

  int iterations = 0;
  if (has_artificial) {
    phase1_ = true;
    const LpStatus st = run_primal(iterations);
    phase1_ = false;
    if (st != LpStatus::Optimal) {
      return extract(st == LpStatus::Unbounded ? LpStatus::IterationLimit : st, iterations);
    }
    double infeasibility = 0.0;
    for (Eigen::Index t = 0; t < m; ++t) {
      if (basic_[static_cast<size_t>(t)] >= art_base_) infeasibility += std::max(xb_[t], 0.0);
    }
    if (infeasibility > 1e-7) return extract(LpStatus::Infeasible, iterations);

    // Swap out artificials that linger in the basis at value zero.
    Eigen::VectorXd w(m);
    for (Eigen::Index t = 0; t < m; ++t) {
      if (basic_[static_cast<size_t>(t)] < art_base_) continue;
      const Eigen::VectorXd sigma = binv_.row(t);
      for (Eigen::Index j = 0; j < nv_ + m; ++j) {
        if (basis_pos_[static_cast<size_t>(j)] >= 0) continue;
        if (j >= nv_ && sense_[static_cast<size_t>(j - nv_)] != RowSense::LessEq) continue;
        if (std::abs(column_dot(j, sigma)) > 1e-7) {
          ftran(j, w);
          pivot(t, j, w);
          break;
        }
      }
    }
  }

  const LpStatus st = run_primal(iterations);
  return extract(st, iterations);
}

LpSolution SimplexSolver::solve_from_basis(std::vector<Eigen::Index> basic) {
  set_basis(std::move(basic));
  if (!xb_.allFinite() || xb_.minCoeff() < -1e-6) return solve();
  phase1_ = false;
  int iterations = 0;
  const LpStatus st = run_primal(iterations);
  return extract(st, iterations);
}

LpSolution SimplexSolver::resolve() {
  const Eigen::Index m = num_rows();
  if (basis_rows_ == 0) return solve();
  const Eigen::Index old_m = basis_rows_;
  if (old_m < m) {
    for (Eigen::Index q = old_m; q < m; ++q) {
      if (sense_[static_cast<size_t>(q)] != RowSense::LessEq) return solve();
    }
    // Basis extension: new rows enter on their own slacks, so the inverse
    // grows by an identity block plus the coupling of new rows to old basics.
    Eigen::MatrixXd grown = Eigen::MatrixXd::Zero(m, m);
    grown.topLeftCorner(old_m, old_m) = binv_;
    Eigen::VectorXd xb = Eigen::VectorXd::Zero(m);
    xb.head(old_m) = xb_;
    for (Eigen::Index q = old_m; q < m; ++q) {
      grown(q, q) = 1.0;
      double slack_value = rhs_[static_cast<size_t>(q)];
      for (const auto& [var, value] : rows_[static_cast<size_t>(q)]) {
        const Eigen::Index at = basis_pos_[static_cast<size_t>(var)];
        if (at < 0) continue;
        grown.row(q).head(old_m).noalias() -= value * binv_.row(at);
        slack_value -= value * xb_[at];
      }
      xb[q] = slack_value;
    }
    binv_ = std::move(grown);
    xb_ = std::move(xb);
    basic_.resize(static_cast<size_t>(m));
    art_base_ = nv_ + m;
    art_sign_.assign(static_cast<size_t>(m), 1.0);
    std::vector<Eigen::Index> where(static_cast<size_t>(nv_ + 2 * m), -1);
    for (Eigen::Index t = 0; t < old_m; ++t) {
      where[static_cast<size_t>(basic_[static_cast<size_t>(t)])] = t;
    }
    for (Eigen::Index q = old_m; q < m; ++q) {
      basic_[static_cast<size_t>(q)] = nv_ + q;
      where[static_cast<size_t>(nv_ + q)] = q;
    }
    basis_pos_ = std::move(where);
    basis_rows_ = m;
    pivots_since_refactor_ = 0;
  }

  phase1_ = false;
  int iterations = 0;
  LpStatus st = run_dual(iterations);
  if (st != LpStatus::Optimal) return solve();
  st = run_primal(iterations);
  if (st != LpStatus::Optimal) return solve();
  return extract(st, iterations);
}

}  // namespace mcboost
