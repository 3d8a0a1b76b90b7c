#include "mcboost/regularizers.hpp"

#include <algorithm>
#include <cmath>

namespace mcboost {

double norm_value(RegKind kind, const MatrixXd& w) {
  switch (kind) {
    case RegKind::L1:
      return w.cwiseAbs().sum();
    case RegKind::L12:
      return w.rowwise().norm().sum();
    case RegKind::L1Inf: {
      double total = 0.0;
      for (Eigen::Index j = 0; j < w.rows(); ++j) total += w.row(j).cwiseAbs().maxCoeff();
      return total;
    }
  }
  throw InputError("unknown regularizer kind");
}

VectorXd prox_row(RegKind kind, const VectorXd& v, double kappa) {
  if (kappa < 0.0) throw InputError("prox threshold must be nonnegative");
  switch (kind) {
    case RegKind::L1: {
      VectorXd out(v.size());
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        out[i] = a <= kappa ? 0.0 : (1.0 - kappa / a) * v[i];
      }
      return out;
    }
    case RegKind::L12: {
      const double norm = v.norm();
      if (norm <= kappa) return VectorXd::Zero(v.size());
      return (1.0 - kappa / norm) * v;
    }
    case RegKind::L1Inf:
      // Moreau: prox of kappa*||.||_inf is the residual of the l1-ball projection.
      return v - project_l1_ball(v, kappa);
  }
  throw InputError("unknown regularizer kind");
}

MatrixXd prox_rows(RegKind kind, const MatrixXd& v, double kappa) {
  MatrixXd out(v.rows(), v.cols());
  for (Eigen::Index j = 0; j < v.rows(); ++j) {
    out.row(j) = prox_row(kind, v.row(j).transpose(), kappa).transpose();
  }
  return out;
}

VectorXd project_l1_ball(const VectorXd& v, double radius) {
  if (radius < 0.0) throw InputError("l1 ball radius must be nonnegative");
  if (radius == 0.0) return VectorXd::Zero(v.size());
  if (v.cwiseAbs().sum() <= radius) return v;
  std::vector<double> mu(static_cast<size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) mu[static_cast<size_t>(i)] = std::abs(v[i]);
  std::sort(mu.begin(), mu.end(), std::greater<double>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (size_t t = 0; t < mu.size(); ++t) {
    cumulative += mu[t];
    const double candidate = (cumulative - radius) / static_cast<double>(t + 1);
    if (mu[t] - candidate > 0.0) theta = candidate;
  }
  VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]) - theta;
    out[i] = a <= 0.0 ? 0.0 : (v[i] > 0.0 ? a : -a);
  }
  return out;
}

double stopping_margin(RegKind kind, const VectorXd& class_edges) {
  if (class_edges.size() == 0) throw InputError("empty edge vector");
  switch (kind) {
    case RegKind::L1:
      return class_edges.maxCoeff();
    case RegKind::L12:
      return class_edges.norm();
    case RegKind::L1Inf:
      return class_edges.cwiseMax(0.0).sum();
  }
  throw InputError("unknown regularizer kind");
}

const char* reg_name(RegKind kind) {
  switch (kind) {
    case RegKind::L1:
      return "l1";
    case RegKind::L12:
      return "l12";
    case RegKind::L1Inf:
      return "l1inf";
  }
  return "?";
}

}  // namespace mcboost
