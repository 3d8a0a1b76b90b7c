#include "mcboost/box_lbfgs.hpp"

#include <cmath>
#include <deque>

namespace mcboost {

using Eigen::VectorXd;

namespace {

double projected_residual(const VectorXd& x, const VectorXd& grad, const VectorXd& lower) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double moved = std::max(lower[i], x[i] - grad[i]);
    worst = std::max(worst, std::abs(x[i] - moved));
  }
  return worst;
}

}  // namespace

BoxLbfgsResult minimize_box_lbfgs(
    const std::function<double(const VectorXd&, VectorXd&)>& fg, VectorXd x0,
    const VectorXd& lower, const BoxLbfgsOptions& options) {
  const Eigen::Index n = x0.size();
  VectorXd x = x0.cwiseMax(lower);
  VectorXd grad(n), masked(n), direction(n), trial(n), trial_grad(n);
  double value = fg(x, grad);

  struct Pair {
    VectorXd s, y;
    double rho;
  };
  std::deque<Pair> history;

  BoxLbfgsResult result;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    result.residual = projected_residual(x, grad, lower);
    if (result.residual <= options.tolerance) {
      result.converged = true;
      break;
    }

    // Coordinates pinned at the bound with an inward-pushing gradient stay put.
    for (Eigen::Index i = 0; i < n; ++i) {
      const bool active = x[i] - lower[i] <= 1e-14 * (1.0 + std::abs(lower[i])) && grad[i] > 0.0;
      masked[i] = active ? 0.0 : grad[i];
    }

    direction = -masked;
    if (!history.empty()) {
      std::vector<double> alpha(history.size());
      for (size_t h = history.size(); h-- > 0;) {
        alpha[h] = history[h].rho * history[h].s.dot(direction);
        direction -= alpha[h] * history[h].y;
      }
      const Pair& last = history.back();
      direction *= last.s.dot(last.y) / last.y.squaredNorm();
      for (size_t h = 0; h < history.size(); ++h) {
        const double beta = history[h].rho * history[h].y.dot(direction);
        direction += (alpha[h] - beta) * history[h].s;
      }
      for (Eigen::Index i = 0; i < n; ++i)
        if (masked[i] == 0.0 && grad[i] > 0.0 &&
            x[i] - lower[i] <= 1e-14 * (1.0 + std::abs(lower[i])))
          direction[i] = 0.0;
      if (direction.dot(masked) > -1e-12 * direction.norm() * masked.norm())
        direction = -masked;  // not a descent direction, fall back to steepest
    }

    // Projected backtracking with an Armijo test on the actual displacement.
    double step = 1.0;
    bool accepted = false;
    double trial_value = value;
    for (int back = 0; back < 60; ++back) {
      trial = (x + step * direction).cwiseMax(lower);
      const VectorXd displacement = trial - x;
      if (displacement.lpNorm<Eigen::Infinity>() == 0.0) break;
      trial_value = fg(trial, trial_grad);
      if (trial_value <= value + 1e-4 * grad.dot(displacement)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      history.clear();
      step = 1.0;
      for (int back = 0; back < 60 && !accepted; ++back) {
        trial = (x - step * masked).cwiseMax(lower);
        const VectorXd displacement = trial - x;
        if (displacement.lpNorm<Eigen::Infinity>() == 0.0) break;
        trial_value = fg(trial, trial_grad);
        if (trial_value <= value + 1e-4 * grad.dot(displacement)) accepted = true;
        step *= 0.5;
      }
    }
    if (!accepted) break;  // no decrease possible at machine precision

    VectorXd s = trial - x;
    VectorXd yv = trial_grad - grad;
    const double sy = s.dot(yv);
    if (sy > 1e-12 * s.norm() * yv.norm()) {
      history.push_back({std::move(s), std::move(yv), 1.0 / sy});
      if (static_cast<int>(history.size()) > options.memory) history.pop_front();
    }
    x.swap(trial);
    grad.swap(trial_grad);
    value = trial_value;
  }

  result.x = std::move(x);
  result.value = value;
  result.iterations = it;
  if (!result.converged) result.residual = projected_residual(result.x, grad, lower);
  return result;
}

}  // namespace mcboost
