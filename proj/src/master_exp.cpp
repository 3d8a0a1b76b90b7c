#include "mcboost/master_solvers.hpp"

#include "mcboost/box_lbfgs.hpp"
#include "mcboost/weak_learner.hpp"

namespace mcboost {

// On W >= 0 the l1 penalty is a linear term, so the whole objective is smooth
// and a projected quasi-Newton method converges fast; no proximal machinery
// is needed for this master.
MasterSolution solve_exp_l1(const Eigen::MatrixXd& h, const std::vector<int>& labels,
                            int num_classes, double nu, const SmoothMasterOptions& options,
                            const Eigen::MatrixXd* warm_w) {
  const Eigen::Index m = h.rows();
  const Eigen::Index t = h.cols();
  const Eigen::Index k = num_classes;
  if (m == 0 || t == 0) throw InputError("exponential master needs data and at least one stump");
  if (m != static_cast<Eigen::Index>(labels.size()))
    throw InputError("response rows and label count differ");
  if (!(nu > 0.0)) throw InputError("regularization strength must be positive");
  if (warm_w && (warm_w->rows() != t || warm_w->cols() != k))
    throw InputError("warm start shape does not match stumps/classes");

  auto fg = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
    const Eigen::Map<const MatrixXd> w(x.data(), t, k);
    const MarginMatrix margins = margins_from_scores(h * w, labels, MarginMode::Pairwise);
    const MatrixXd u = dual_weights_from_margins(LossKind::Exponential, margins);
    const MatrixXd g =
        -h.transpose() * edge_weights(u, labels, num_classes, EdgeKind::Gradient);
    grad = Eigen::Map<const Eigen::VectorXd>(g.data(), g.size());
    grad.array() += nu;
    return loss_value(LossKind::Exponential, margins) + nu * x.sum();
  };

  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(t * k);
  if (warm_w) x0 = Eigen::Map<const Eigen::VectorXd>(warm_w->data(), warm_w->size());

  BoxLbfgsOptions lbfgs;
  lbfgs.tolerance = options.tolerance;
  lbfgs.max_iterations = options.max_iterations;
  const BoxLbfgsResult result =
      minimize_box_lbfgs(fg, x0, Eigen::VectorXd::Zero(t * k), lbfgs);

  MasterSolution out;
  out.w = Eigen::Map<const MatrixXd>(result.x.data(), t, k);
  out.objective = result.value;
  out.iterations = result.iterations;
  out.primal_residual = result.residual;
  const MarginMatrix margins = margins_from_scores(h * out.w, labels, MarginMode::Pairwise);
  out.u = dual_weights_from_margins(LossKind::Exponential, margins);
  return out;
}

}  // namespace mcboost
