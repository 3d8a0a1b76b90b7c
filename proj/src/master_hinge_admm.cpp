#include "mcboost/master_solvers.hpp"

#include <algorithm>
#include <cmath>

namespace mcboost {

namespace {

// Euclidean projection onto the probability simplex (sort and threshold).
Eigen::VectorXd project_simplex(const Eigen::VectorXd& y) {
  const Eigen::Index k = y.size();
  std::vector<double> sorted(y.data(), y.data() + k);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    cumulative += sorted[static_cast<size_t>(j)];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (sorted[static_cast<size_t>(j)] - candidate > 0.0) tau = candidate;
  }
  return (y.array() - tau).cwiseMax(0.0);
}

// The W-step
//     argmin_W  sum_i max_r (e_{ir} + H_i (w_r - w_{y_i})) + (lambda/2)|W - V|^2
// is solved through its dual: one simplex-constrained row alpha_i per example,
// ascended coordinate-wise. W = V - H'(alpha - delta)/lambda is kept in sync
// by rank-one updates, and the optimal alpha doubles as the example weights
// the stump search prices against.
double wstep_dual_ascent(const MatrixXd& h, const std::vector<int>& labels, const MatrixXd& v,
                         double lambda, MatrixXd& alpha, MatrixXd& w, double tolerance,
                         int max_sweeps) {
  const Eigen::Index m = h.rows();
  const Eigen::Index t = h.cols();

  MatrixXd beta = alpha;  // alpha - delta
  for (Eigen::Index i = 0; i < m; ++i) beta(i, labels[static_cast<size_t>(i)]) -= 1.0;
  w = v - (h.transpose() * beta) / lambda;

  const double ht_sq = static_cast<double>(t);  // |H_i|^2: stump outputs are +-1
  double change = 0.0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    change = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const int y = labels[static_cast<size_t>(i)];
      Eigen::VectorXd q = (h.row(i) * w).transpose() + (ht_sq / lambda) * beta.row(i).transpose();
      q.array() += 1.0;
      q[y] -= 1.0;
      Eigen::VectorXd target = (lambda / ht_sq) * q;
      target[y] += 1.0;
      const Eigen::VectorXd fresh = project_simplex(target);
      const Eigen::VectorXd delta_alpha = fresh - alpha.row(i).transpose();
      const double step = delta_alpha.cwiseAbs().maxCoeff();
      if (step > 0.0) {
        alpha.row(i) = fresh;
        beta.row(i) += delta_alpha;
        w.noalias() -= (h.row(i).transpose() * delta_alpha.transpose()) / lambda;
      }
      change = std::max(change, step);
    }
    if (change <= tolerance) break;
  }
  return change;
}

}  // namespace

MasterSolution solve_hinge_admm(const Eigen::MatrixXd& h, const std::vector<int>& labels,
                                int num_classes, RegKind reg, double nu,
                                const AdmmOptions& options, HingeAdmmWarmState* warm,
                                double monotonicity_cap) {
  const Eigen::Index m = h.rows();
  const Eigen::Index t = h.cols();
  const Eigen::Index k = num_classes;
  if (m == 0 || t == 0) throw InputError("hinge master needs data and at least one stump");
  if (m != static_cast<Eigen::Index>(labels.size()))
    throw InputError("response rows and label count differ");
  if (num_classes < 2) throw InputError("hinge master needs at least two classes");
  if (!(nu > 0.0)) throw InputError("regularization strength must be positive");

  const double lambda = options.lambda;
  MatrixXd z = MatrixXd::Zero(t, k);
  MatrixXd u = MatrixXd::Zero(t, k);
  MatrixXd alpha = MatrixXd::Zero(m, k);
  for (Eigen::Index i = 0; i < m; ++i) alpha(i, labels[static_cast<size_t>(i)]) = 1.0;
  if (warm && warm->z.size() > 0) {
    if (warm->z.rows() != t || warm->z.cols() != k || warm->u.rows() != t ||
        warm->u.cols() != k || warm->alpha.rows() != m || warm->alpha.cols() != k) {
      throw InputError("warm state shape does not match stumps/classes/examples");
    }
    z = warm->z;
    u = warm->u;
    alpha = warm->alpha;
  }

  auto full_objective = [&](const MatrixXd& weights) {
    const MarginMatrix margins = margins_from_scores(h * weights, labels, MarginMode::Pairwise);
    return loss_value(LossKind::Hinge, margins) + nu * norm_value(reg, weights);
  };
  const double cap = std::min(monotonicity_cap, full_objective(z.cwiseMax(0.0)));

  MatrixXd w = MatrixXd::Zero(t, k);
  double wstep_tolerance = std::max(options.wstep_tolerance, 1e-10);
  double tolerance = options.tolerance;
  double primal_residual = std::numeric_limits<double>::infinity();
  double dual_residual = std::numeric_limits<double>::infinity();
  int total_iterations = 0;
  // Each tightening round improves the settled objective by about the same
  // factor as the tolerance, so the budget has to cover the gap between the
  // starting tolerance and the cap slack on an unnormalized loss scale.
  const int rescue_rounds = 10;

  for (int round = 0; round <= rescue_rounds; ++round) {
    const int budget = round == 0 ? options.max_iterations
                                  : std::max(50, options.max_iterations / 4);
    // Rescue rounds tighten the W-step tolerance, so the inner sweep budget has
    // to grow with it or the subproblem returns early and the outer iteration
    // freezes at an inexact fixed point.
    const int sweeps = 500 * (1 << std::min(round, 4));
    bool settled = false;
    for (int it = 0; it < budget; ++it) {
      wstep_dual_ascent(h, labels, z - u, lambda, alpha, w, wstep_tolerance, sweeps);
      const MatrixXd z_prev = z;
      z = prox_rows(reg, (w + u).cwiseMax(0.0), nu / lambda);
      u += w - z;
      primal_residual = (w - z).norm();
      dual_residual = lambda * (z - z_prev).norm();
      ++total_iterations;
      const double scale = std::sqrt(static_cast<double>(t * k));
      if (primal_residual <= tolerance * scale && dual_residual <= tolerance * scale) {
        settled = true;
        break;
      }
    }
    if (round == 0 && !settled) {
      throw ConvergenceError("hinge master ran out of iterations", primal_residual,
                             dual_residual, total_iterations);
    }
    if (full_objective(z.cwiseMax(0.0)) <= cap + 1e-9) break;
    if (round == rescue_rounds) {
      throw ConvergenceError("hinge master could not match its warm-start objective",
                             primal_residual, dual_residual, total_iterations);
    }
    tolerance *= 0.1;
    wstep_tolerance = std::max(wstep_tolerance * 0.1, 1e-12);
  }

  if (warm) {
    warm->z = z;
    warm->u = u;
    warm->alpha = alpha;
  }

  MasterSolution out;
  out.w = z.cwiseMax(0.0);
  out.u = alpha;
  out.objective = full_objective(out.w);
  out.primal_residual = primal_residual;
  out.dual_residual = dual_residual;
  out.iterations = total_iterations;
  return out;
}

}  // namespace mcboost
