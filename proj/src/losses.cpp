#include "mcboost/losses.hpp"

#include "mcboost/weak_learner.hpp"

#include <cmath>

namespace mcboost {

double log1p_exp_neg(double t) {
  return t >= 0.0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t));
}

namespace {

void check_margins(const MarginMatrix& margins) {
  if (margins.rho.rows() == 0 || margins.rho.cols() < 2)
    throw InputError("margin matrix needs at least 1 row and 2 classes");
  if (margins.rho.rows() != static_cast<Eigen::Index>(margins.labels.size()))
    throw InputError("margin rows and label count differ");
}

}  // namespace

double loss_value(LossKind kind, const MarginMatrix& margins) {
  check_margins(margins);
  const MatrixXd& rho = margins.rho;
  const Eigen::Index m = rho.rows();
  const Eigen::Index k = rho.cols();
  switch (kind) {
    case LossKind::Hinge: {
      if (margins.mode != MarginMode::Pairwise)
        throw InputError("hinge loss is defined on pairwise margins");
      double total = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        const int y = margins.labels[static_cast<size_t>(i)];
        double worst = 0.0;
        for (Eigen::Index r = 0; r < k; ++r) {
          if (static_cast<int>(r) == y) continue;
          worst = std::max(worst, 1.0 - rho(i, r));
        }
        total += worst;
      }
      return total;
    }
    case LossKind::Exponential: {
      const double shift = (-rho).maxCoeff();
      return shift + std::log(((-rho).array() - shift).exp().sum());
    }
    case LossKind::Logistic: {
      double total = 0.0;
      for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index r = 0; r < k; ++r) total += log1p_exp_neg(rho(i, r));
      return total / (static_cast<double>(m) * static_cast<double>(k));
    }
  }
  throw InputError("unknown loss kind");
}

MatrixXd dual_weights_from_margins(LossKind kind, const MarginMatrix& margins) {
  check_margins(margins);
  const MatrixXd& rho = margins.rho;
  const Eigen::Index m = rho.rows();
  const Eigen::Index k = rho.cols();
  switch (kind) {
    case LossKind::Exponential: {
      const double shift = (-rho).maxCoeff();
      MatrixXd u = ((-rho).array() - shift).exp();
      return u / u.sum();
    }
    case LossKind::Logistic: {
      const double mk = static_cast<double>(m) * static_cast<double>(k);
      MatrixXd u(m, k);
      for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index r = 0; r < k; ++r) u(i, r) = 1.0 / (mk * (1.0 + std::exp(rho(i, r))));
      return u;
    }
    case LossKind::Hinge:
      throw InputError("hinge duals come from the master solver, not the margins");
  }
  throw InputError("unknown loss kind");
}

MatrixXd loss_gradient(LossKind kind, const MatrixXd& w, const MatrixXd& h,
                       const std::vector<int>& labels, int num_classes, MarginMode mode) {
  if (kind == LossKind::Hinge) throw InputError("hinge loss has no gradient");
  if (h.rows() != static_cast<Eigen::Index>(labels.size()))
    throw InputError("response rows and label count differ");
  if (w.rows() != h.cols() || w.cols() != num_classes)
    throw InputError("weight matrix shape does not match response/classes");
  const MarginMatrix margins = margins_from_scores(h * w, labels, mode);
  const MatrixXd u = dual_weights_from_margins(kind, margins);
  if (mode == MarginMode::Pairwise) {
    // d rho_{ir} / d w_s = H_i' ([s==y_i] - [s==r]); summing -U against that
    // is the gradient-kind edge matrix.
    return -h.transpose() * edge_weights(u, labels, num_classes, EdgeKind::Gradient);
  }
  const MatrixXd y = label_signs(labels, num_classes);
  return -h.transpose() * u.cwiseProduct(y);
}

}  // namespace mcboost
