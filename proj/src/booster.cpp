#include "mcboost/booster.hpp"

#include <cmath>
#include <memory>

#include "mcboost/weak_learner.hpp"

namespace mcboost {

namespace {

enum class MasterKind { HingeLp, ExpSmooth, LogisticAdmm, HingeAdmm };

MasterKind dispatch(const TrainConfig& config) {
  if (config.fast_mode && config.loss != LossKind::Logistic)
    throw InputError("fast mode requires the logistic loss");
  if (config.blocks > 1 && config.loss != LossKind::Logistic)
    throw InputError("distributed training requires the logistic loss");
  switch (config.loss) {
    case LossKind::Hinge:
      return config.reg == RegKind::L1 ? MasterKind::HingeLp : MasterKind::HingeAdmm;
    case LossKind::Exponential:
      if (config.reg != RegKind::L1)
        throw InputError("the exponential loss supports only the elementwise penalty");
      return MasterKind::ExpSmooth;
    case LossKind::Logistic:
      return MasterKind::LogisticAdmm;
  }
  throw InputError("unknown loss kind");
}

void append_zero_row(MatrixXd& m, Eigen::Index cols) {
  m.conservativeResize(m.rows() + 1, cols);
  m.row(m.rows() - 1).setZero();
}

}  // namespace

TrainResult train(const Dataset& data, const TrainConfig& config, const Dataset* test) {
  validate(data, /*require_all_classes=*/true);
  if (config.max_stumps < 1) throw InputError("need at least one boosting iteration");
  if (!(config.nu > 0.0)) throw InputError("regularization strength must be positive");
  if (config.eps < 0.0) throw InputError("stopping slack must be nonnegative");
  if (config.blocks < 1) throw InputError("block count must be at least 1");
  const MasterKind master = dispatch(config);

  const Eigen::Index m = data.m();
  const int k = data.num_classes;
  const MarginMode mode = config.fast_mode ? MarginMode::OneVsAll : MarginMode::Pairwise;
  const MatrixXd signs =
      mode == MarginMode::OneVsAll ? label_signs(data.labels, k) : MatrixXd();

  TrainResult result;
  result.model.num_classes = k;
  result.model.weights.resize(0, k);
  result.stop_reason = "max_stumps";

  // Uniform start: the hinge algorithm weights rows to sum to one, the smooth
  // losses weight the whole matrix to sum to one.
  MatrixXd u = MatrixXd::Constant(
      m, k, config.loss == LossKind::Hinge ? 1.0 / k : 1.0 / (static_cast<double>(m) * k));

  StumpSearch search(data.x);
  MatrixXd h(m, 0);
  std::unique_ptr<HingeLpMaster> lp;
  AdmmWarmState logistic_warm;
  HingeAdmmWarmState hinge_warm;
  hinge_warm.alpha.resize(m, k);
  for (Eigen::Index i = 0; i < m; ++i) {
    hinge_warm.alpha.row(i).setZero();
    hinge_warm.alpha(i, data.labels[static_cast<size_t>(i)]) = 1.0;
  }
  MatrixXd exp_warm(0, k);
  const std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks =
      make_blocks(m, config.blocks);
  AdmmOptions admm = config.admm;
  SmoothMasterOptions smooth = config.smooth;

  double prev_objective = std::numeric_limits<double>::infinity();

  auto solve_master = [&](int iteration) {
    MasterSolution sol;
    try {
      switch (master) {
        case MasterKind::HingeLp:
          sol = lp->solve();
          break;
        case MasterKind::ExpSmooth:
          sol = solve_exp_l1(h, data.labels, k, config.nu, smooth,
                             exp_warm.rows() == h.cols() ? &exp_warm : nullptr);
          exp_warm = sol.w;
          break;
        case MasterKind::LogisticAdmm:
          sol = solve_logistic_admm(h, data.labels, k, config.reg, config.nu, mode, blocks,
                                    admm, &logistic_warm, prev_objective);
          break;
        case MasterKind::HingeAdmm:
          sol = solve_hinge_admm(h, data.labels, k, config.reg, config.nu, admm, &hinge_warm,
                                 prev_objective);
          break;
      }
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("master solve failed at boosting iteration " +
                                 std::to_string(iteration),
                             e.primal_residual, e.dual_residual, e.iterations);
    }
    return sol;
  };

  for (int iteration = 1; iteration <= config.max_stumps; ++iteration) {
    const MatrixXd g =
        mode == MarginMode::OneVsAll
            ? MatrixXd(u.cwiseProduct(signs))
            : edge_weights(u, data.labels, k,
                           config.loss == LossKind::Hinge ? EdgeKind::Hinge
                                                          : EdgeKind::Gradient);
    const StumpSearchResult best = search.best(g);
    const VectorXd column = stump_column(best.stump, data.x);
    const VectorXd edges = class_edges(column, g);
    const double margin = stopping_margin(config.reg, edges);
    if (margin < config.nu + config.eps) {
      result.stop_reason = "margin";
      break;
    }

    bool duplicate = false;
    for (Eigen::Index j = 0; j < h.cols() && !duplicate; ++j) {
      duplicate = (h.col(j).array() == column.array()).all();
    }
    if (duplicate && !(margin - config.nu > config.eps)) {
      // The master is under-resolved but the candidate adds nothing new:
      // tighten, clean up the weights once, and stop.
      admm.tolerance *= 1e-2;
      admm.wstep_tolerance *= 1e-2;
      smooth.tolerance *= 1e-2;
      if (h.cols() > 0) {
        const MasterSolution sol = solve_master(iteration);
        result.model.weights = sol.w;
        u = sol.u;
        prev_objective = sol.objective;
      }
      result.stop_reason = "duplicate_column";
      break;
    }

    h.conservativeResize(m, h.cols() + 1);
    h.col(h.cols() - 1) = column;
    result.model.stumps.push_back(best.stump);
    if (master == MasterKind::HingeLp) {
      if (!lp) lp = std::make_unique<HingeLpMaster>(data.labels, k, config.nu);
      lp->add_column(column);
    }
    if (logistic_warm.z.size() > 0) {
      append_zero_row(logistic_warm.z, k);
      for (MatrixXd& uq : logistic_warm.u) append_zero_row(uq, k);
    }
    if (hinge_warm.z.size() > 0) {
      append_zero_row(hinge_warm.z, k);
      append_zero_row(hinge_warm.u, k);
    }
    if (exp_warm.rows() == h.cols() - 1) append_zero_row(exp_warm, k);

    const MasterSolution sol = solve_master(iteration);
    result.model.weights = sol.w;
    u = sol.u;
    prev_objective = sol.objective;

    TraceRow row;
    row.iteration = iteration;
    row.stump = best.stump;
    row.cls = best.cls;
    row.edge = best.edge;
    row.stopping_margin = margin;
    row.objective = sol.objective;
    row.train_error = error_rate(result.model, data);
    if (test) row.test_error = error_rate(result.model, *test);
    result.trace.push_back(row);
  }
  result.final_u = u;
  return result;
}

double objective_value(const EnsembleModel& model, const Dataset& data, LossKind loss,
                       RegKind reg, double nu, MarginMode mode) {
  const MarginMatrix rho = margins(model, data, mode);
  return loss_value(loss, rho) + nu * norm_value(reg, model.weights);
}

}  // namespace mcboost
