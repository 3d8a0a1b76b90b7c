#pragma once

#include <Eigen/Dense>

#include <functional>

namespace mcboost {

/// Limited-memory projected quasi-Newton for smooth minimization subject to
/// elementwise lower bounds. Directions come from an L-BFGS two-loop with
/// active coordinates masked out; steps use projected Armijo backtracking.
struct BoxLbfgsOptions {
  int memory = 10;
  int max_iterations = 5000;
  double tolerance = 1e-8;  // infinity norm of x - P(x - grad)
};

struct BoxLbfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// fg evaluates the objective at x and fills grad (same size as x).
BoxLbfgsResult minimize_box_lbfgs(
    const std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>& fg,
    Eigen::VectorXd x0, const Eigen::VectorXd& lower, const BoxLbfgsOptions& options = {});

}  // namespace mcboost
