#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace mcboost {

/// Dense revised-simplex solver for
///     min c'x   s.t.  rows of (A x <= b | A x == b),  x >= 0.
///
/// Designed for column-generation masters: rows can be appended after a solve
/// and `resolve` restores optimality with the dual simplex starting from the
/// previous basis (appending rows keeps the old basis dual-feasible). A basis
/// inverse is kept densely and refreshed by rank-1 updates with periodic
/// refactorization; pricing is Dantzig with a switch to Bland's rule after a
/// degenerate stall, which guards against cycling.
enum class RowSense { LessEq, Equal };

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  Eigen::VectorXd x;  // structural variables
  Eigen::VectorXd y;  // one multiplier per row (c_B' B^-1)
  double objective = 0.0;
  int iterations = 0;
};

class SimplexSolver {
 public:
  SimplexSolver(Eigen::Index num_vars, Eigen::VectorXd cost);

  /// Appends one row; coefficients are (variable, value) pairs.
  void add_row(const std::vector<std::pair<Eigen::Index, double>>& coefficients, RowSense sense,
               double rhs);

  Eigen::Index num_rows() const { return static_cast<Eigen::Index>(rhs_.size()); }
  Eigen::Index num_vars() const { return nv_; }

  /// Two-phase solve from scratch (any existing basis is discarded).
  LpSolution solve();

  /// Solve from a caller-supplied primal-feasible basis (one extended column
  /// index per row; slack of row i is num_vars + i and exists for LessEq rows).
  LpSolution solve_from_basis(std::vector<Eigen::Index> basic);

  /// After add_row calls on an optimally solved problem: extends the basis
  /// with the new rows' slacks and runs the dual simplex. New rows must be
  /// LessEq. Falls back to a fresh solve if the warm path gets stuck.
  LpSolution resolve();

  bool has_basis() const { return basis_rows_ > 0; }

 private:
  // Extended column indexing: [0, nv_) structural, nv_ + i slack of row i,
  // art_base_ + i artificial of row i (phase 1 only).
  Eigen::Index nv_;
  Eigen::VectorXd cost_;
  std::vector<std::vector<std::pair<Eigen::Index, double>>> cols_;  // structural, by column
  std::vector<std::vector<std::pair<Eigen::Index, double>>> rows_;  // structural, by row
  std::vector<double> rhs_;
  std::vector<RowSense> sense_;

  std::vector<Eigen::Index> basic_;
  std::vector<Eigen::Index> basis_pos_;  // extended index -> row, or -1
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  Eigen::Index basis_rows_ = 0;  // rows covered by the current basis
  Eigen::Index art_base_ = 0;
  std::vector<double> art_sign_;
  int pivots_since_refactor_ = 0;

  bool phase1_ = false;

  double column_cost(Eigen::Index j) const;
  double column_dot(Eigen::Index j, const Eigen::VectorXd& v) const;
  void ftran(Eigen::Index j, Eigen::VectorXd& out) const;
  void refactor();
  void pivot(Eigen::Index row, Eigen::Index entering, const Eigen::VectorXd& w);
  void set_basis(std::vector<Eigen::Index> basic);
  bool price(const Eigen::VectorXd& y, bool bland, Eigen::Index& entering, double& best) const;
  LpStatus run_primal(int& iterations);
  LpStatus run_dual(int& iterations);
  LpSolution extract(LpStatus status, int iterations);
};

}  // namespace mcboost
