#include "mcboost/master_solvers.hpp"

#include <cmath>

#include "mcboost/box_lbfgs.hpp"
#include "mcboost/weak_learner.hpp"

namespace mcboost {

namespace {

// One contiguous slice of the training data held by a consensus worker. Block
// losses are normalized by the GLOBAL (m*k), so the worker objectives sum to
// the ordinary single-machine objective and a one-block run is exact.
struct BlockView {
  MatrixXd h;
  std::vector<int> labels;
  MatrixXd signs;  // one-vs-all label signs, empty in pairwise mode
};

MatrixXd block_weights(const MatrixXd& rho, double global_mk) {
  MatrixXd u(rho.rows(), rho.cols());
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    for (Eigen::Index r = 0; r < rho.cols(); ++r) {
      u(i, r) = 1.0 / (global_mk * (1.0 + std::exp(rho(i, r))));
    }
  }
  return u;
}

// argmin_{w >= 0} block_loss(w) + (lambda/2) |w - v|_F^2, all classes at once.
MatrixXd wstep_joint(const BlockView& block, const MatrixXd& v, double lambda, double global_mk,
                     MarginMode mode, int num_classes, const MatrixXd& w0,
                     const BoxLbfgsOptions& options) {
  const Eigen::Index t = v.rows();
  const Eigen::Index k = v.cols();
  auto fg = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
    const Eigen::Map<const MatrixXd> w(x.data(), t, k);
    const MatrixXd rho = margins_from_scores(block.h * w, block.labels, mode).rho;
    const MatrixXd u = block_weights(rho, global_mk);
    MatrixXd g;
    if (mode == MarginMode::Pairwise) {
      g = -block.h.transpose() * edge_weights(u, block.labels, num_classes, EdgeKind::Gradient);
    } else {
      g = -block.h.transpose() * u.cwiseProduct(block.signs);
    }
    const MatrixXd diff = w - v;
    g.noalias() += lambda * diff;
    grad = Eigen::Map<const Eigen::VectorXd>(g.data(), g.size());
    double value = 0.0;
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
      for (Eigen::Index r = 0; r < k; ++r) value += log1p_exp_neg(rho(i, r));
    }
    return value / global_mk + 0.5 * lambda * diff.squaredNorm();
  };
  const Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(w0.data(), w0.size());
  const BoxLbfgsResult result =
      minimize_box_lbfgs(fg, x0.cwiseMax(0.0), Eigen::VectorXd::Zero(t * k), options);
  return Eigen::Map<const MatrixXd>(result.x.data(), t, k);
}

// One-vs-all margins decouple the classes, so each column of W gets its own
// small solve. Identical minimizer to the joint step, found faster.
MatrixXd wstep_per_class(const BlockView& block, const MatrixXd& v, double lambda,
                         double global_mk, const MatrixXd& w0, const BoxLbfgsOptions& options) {
  const Eigen::Index t = v.rows();
  const Eigen::Index k = v.cols();
  MatrixXd w(t, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    const Eigen::VectorXd signs_r = block.signs.col(r);
    const Eigen::VectorXd v_r = v.col(r);
    auto fg = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
      const Eigen::VectorXd rho = signs_r.cwiseProduct(block.h * x);
      Eigen::VectorXd u(rho.size());
      double value = 0.0;
      for (Eigen::Index i = 0; i < rho.size(); ++i) {
        value += log1p_exp_neg(rho[i]);
        u[i] = 1.0 / (global_mk * (1.0 + std::exp(rho[i])));
      }
      const Eigen::VectorXd diff = x - v_r;
      grad = -block.h.transpose() * u.cwiseProduct(signs_r) + lambda * diff;
      return value / global_mk + 0.5 * lambda * diff.squaredNorm();
    };
    const BoxLbfgsResult result = minimize_box_lbfgs(fg, w0.col(r).cwiseMax(0.0),
                                                     Eigen::VectorXd::Zero(t), options);
    w.col(r) = result.x;
  }
  return w;
}

}  // namespace

Eigen::MatrixXd logistic_wstep(const Eigen::MatrixXd& h, const std::vector<int>& labels,
                               int num_classes, MarginMode mode, const Eigen::MatrixXd& v,
                               double lambda, bool per_class, double tolerance,
                               int max_iterations) {
  if (h.rows() != static_cast<Eigen::Index>(labels.size()))
    throw InputError("response rows and label count differ");
  if (v.rows() != h.cols() || v.cols() != num_classes)
    throw InputError("anchor shape does not match stumps/classes");
  if (per_class && mode != MarginMode::OneVsAll)
    throw InputError("per-class W-steps need one-vs-all margins");
  BlockView view;
  view.h = h;
  view.labels = labels;
  if (mode == MarginMode::OneVsAll) view.signs = label_signs(labels, num_classes);
  const double global_mk = static_cast<double>(h.rows()) * static_cast<double>(num_classes);
  BoxLbfgsOptions options;
  options.tolerance = tolerance;
  options.max_iterations = max_iterations;
  const MatrixXd w0 = v.cwiseMax(0.0);
  if (per_class) return wstep_per_class(view, v, lambda, global_mk, w0, options);
  return wstep_joint(view, v, lambda, global_mk, mode, num_classes, w0, options);
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> make_blocks(Eigen::Index rows, int count) {
  if (count < 1) throw InputError("block count must be at least 1");
  if (static_cast<Eigen::Index>(count) > rows)
    throw InputError("more blocks than examples");
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
  const Eigen::Index base = rows / count;
  const Eigen::Index extra = rows % count;
  Eigen::Index start = 0;
  for (int q = 0; q < count; ++q) {
    const Eigen::Index size = base + (q < static_cast<int>(extra) ? 1 : 0);
    blocks.emplace_back(start, size);
    start += size;
  }
  return blocks;
}

MasterSolution solve_logistic_admm(const Eigen::MatrixXd& h, const std::vector<int>& labels,
                                   int num_classes, RegKind reg, double nu, MarginMode mode,
                                   const std::vector<std::pair<Eigen::Index, Eigen::Index>>& blocks,
                                   const AdmmOptions& options, AdmmWarmState* warm,
                                   double monotonicity_cap) {
  const Eigen::Index m = h.rows();
  const Eigen::Index t = h.cols();
  const Eigen::Index k = num_classes;
  if (m == 0 || t == 0) throw InputError("logistic master needs data and at least one stump");
  if (m != static_cast<Eigen::Index>(labels.size()))
    throw InputError("response rows and label count differ");
  if (num_classes < 2) throw InputError("logistic master needs at least two classes");
  if (!(nu > 0.0)) throw InputError("regularization strength must be positive");
  if (blocks.empty()) throw InputError("at least one block is required");
  Eigen::Index cursor = 0;
  for (const auto& [start, count] : blocks) {
    if (start != cursor || count <= 0) throw InputError("blocks must tile the examples in order");
    cursor += count;
  }
  if (cursor != m) throw InputError("blocks must cover every example");

  const int q_count = static_cast<int>(blocks.size());
  const double global_mk = static_cast<double>(m) * static_cast<double>(k);
  const double lambda = options.lambda;
  const MatrixXd all_signs =
      mode == MarginMode::OneVsAll ? label_signs(labels, num_classes) : MatrixXd();

  std::vector<BlockView> views(static_cast<size_t>(q_count));
  for (int q = 0; q < q_count; ++q) {
    const auto& [start, count] = blocks[static_cast<size_t>(q)];
    BlockView& view = views[static_cast<size_t>(q)];
    view.h = h.middleRows(start, count);
    view.labels.assign(labels.begin() + start, labels.begin() + start + count);
    if (mode == MarginMode::OneVsAll) view.signs = all_signs.middleRows(start, count);
  }

  MatrixXd z = MatrixXd::Zero(t, k);
  std::vector<MatrixXd> u(static_cast<size_t>(q_count), MatrixXd::Zero(t, k));
  if (warm && warm->z.size() > 0) {
    if (warm->z.rows() != t || warm->z.cols() != k ||
        warm->u.size() != static_cast<size_t>(q_count)) {
      throw InputError("warm state shape does not match stumps/classes/blocks");
    }
    z = warm->z;
    for (int q = 0; q < q_count; ++q) {
      const MatrixXd& uq = warm->u[static_cast<size_t>(q)];
      if (uq.rows() != t || uq.cols() != k)
        throw InputError("warm state shape does not match stumps/classes/blocks");
      u[static_cast<size_t>(q)] = uq;
    }
  }

  auto full_objective = [&](const MatrixXd& w) {
    const MarginMatrix margins = margins_from_scores(h * w, labels, mode);
    return loss_value(LossKind::Logistic, margins) + nu * norm_value(reg, w);
  };
  const double cap = std::min(monotonicity_cap, full_objective(z.cwiseMax(0.0)));

  std::vector<MatrixXd> w(static_cast<size_t>(q_count));
  for (int q = 0; q < q_count; ++q) {
    w[static_cast<size_t>(q)] = (z - u[static_cast<size_t>(q)]).cwiseMax(0.0);
  }

  BoxLbfgsOptions inner;
  inner.tolerance = options.wstep_tolerance;
  inner.max_iterations = options.wstep_max_iterations;

  double tolerance = options.tolerance;
  double primal_residual = std::numeric_limits<double>::infinity();
  double dual_residual = std::numeric_limits<double>::infinity();
  int total_iterations = 0;
  // Tightening rounds shrink the settled objective gap roughly in step with
  // the tolerance, so leave enough of them to bridge from the starting
  // tolerance down to the cap slack.
  const int rescue_rounds = 10;

  for (int round = 0; round <= rescue_rounds; ++round) {
    const int budget = round == 0 ? options.max_iterations
                                  : std::max(50, options.max_iterations / 4);
    bool settled = false;
    for (int it = 0; it < budget; ++it) {
      for (int q = 0; q < q_count; ++q) {
        const MatrixXd v = z - u[static_cast<size_t>(q)];
        const BlockView& view = views[static_cast<size_t>(q)];
        if (mode == MarginMode::OneVsAll && !options.joint_wstep) {
          w[static_cast<size_t>(q)] = wstep_per_class(view, v, lambda, global_mk,
                                                      w[static_cast<size_t>(q)], inner);
        } else {
          w[static_cast<size_t>(q)] = wstep_joint(view, v, lambda, global_mk, mode, num_classes,
                                                  w[static_cast<size_t>(q)], inner);
        }
      }
      MatrixXd zbar = MatrixXd::Zero(t, k);
      for (int q = 0; q < q_count; ++q) {
        zbar += w[static_cast<size_t>(q)] + u[static_cast<size_t>(q)];
      }
      zbar /= static_cast<double>(q_count);
      const MatrixXd z_prev = z;
      z = prox_rows(reg, zbar, nu / (lambda * q_count));
      double primal_sq = 0.0;
      for (int q = 0; q < q_count; ++q) {
        u[static_cast<size_t>(q)] += w[static_cast<size_t>(q)] - z;
        primal_sq += (w[static_cast<size_t>(q)] - z).squaredNorm();
      }
      primal_residual = std::sqrt(primal_sq);
      dual_residual = lambda * (z - z_prev).norm();
      ++total_iterations;
      const double scale = std::sqrt(static_cast<double>(t * k));
      if (primal_residual <= tolerance * scale * std::sqrt(static_cast<double>(q_count)) &&
          dual_residual <= tolerance * scale) {
        settled = true;
        break;
      }
    }
    if (round == 0 && !settled) {
      throw ConvergenceError("distributed logistic master ran out of iterations",
                             primal_residual, dual_residual, total_iterations);
    }
    if (full_objective(z.cwiseMax(0.0)) <= cap + 1e-9) break;
    if (round == rescue_rounds) {
      throw ConvergenceError("logistic master could not match its warm-start objective",
                             primal_residual, dual_residual, total_iterations);
    }
    tolerance *= 0.1;
    inner.tolerance = std::max(inner.tolerance * 0.1, 1e-13);
  }

  if (warm) {
    warm->z = z;
    warm->u = u;
  }

  MasterSolution out;
  out.w = z.cwiseMax(0.0);
  out.objective = full_objective(out.w);
  out.primal_residual = primal_residual;
  out.dual_residual = dual_residual;
  out.iterations = total_iterations;
  const MarginMatrix margins = margins_from_scores(h * out.w, labels, mode);
  out.u = dual_weights_from_margins(LossKind::Logistic, margins);
  return out;
}

}  // namespace mcboost
