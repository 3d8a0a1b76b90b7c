#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "mcboost/booster.hpp"
#include "mcboost/model.hpp"
#include "mcboost/regularizers.hpp"

namespace testutil {

using mcboost::Dataset;
using mcboost::MatrixXd;
using mcboost::VectorXd;

// Random dataset with every class present: labels cycle 0..k-1 then shuffle.
inline Dataset random_dataset(std::mt19937_64& rng, Eigen::Index m, Eigen::Index d, int k) {
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  Dataset data;
  data.x.resize(m, d);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < d; ++j) data.x(i, j) = unif(rng);
  data.labels.resize(static_cast<size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) data.labels[static_cast<size_t>(i)] = i % k;
  std::shuffle(data.labels.begin(), data.labels.end(), rng);
  data.num_classes = k;
  return data;
}

// Random sign matrix standing in for stump responses.
inline MatrixXd random_responses(std::mt19937_64& rng, Eigen::Index m, Eigen::Index t) {
  std::bernoulli_distribution coin(0.5);
  MatrixXd h(m, t);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < t; ++j) h(i, j) = coin(rng) ? 1.0 : -1.0;
  return h;
}

inline std::vector<int> random_labels(std::mt19937_64& rng, Eigen::Index m, int k) {
  std::vector<int> labels(static_cast<size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) labels[static_cast<size_t>(i)] = i % k;
  std::shuffle(labels.begin(), labels.end(), rng);
  return labels;
}

// Regularized loss at a weight matrix, the quantity every master minimizes.
inline double penalized_loss(mcboost::LossKind loss, mcboost::RegKind reg, double nu,
                             const MatrixXd& h, const std::vector<int>& labels, int k,
                             const MatrixXd& w, mcboost::MarginMode mode) {
  const mcboost::MarginMatrix rho = mcboost::margins_from_scores(h * w, labels, mode);
  return mcboost::loss_value(loss, rho) + nu * mcboost::norm_value(reg, w);
}

}  // namespace testutil
