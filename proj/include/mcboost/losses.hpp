#pragma once

#include "mcboost/model.hpp"

namespace mcboost {

enum class LossKind { Hinge, Exponential, Logistic };

/// log(1 + exp(-t)) computed without overflow on either tail.
double log1p_exp_neg(double t);

/// Value of the training loss at a margin matrix.
///  Hinge:       sum_i max(0, max_{r != y_i} (1 - rho_{ir}))   (pairwise margins only)
///  Exponential: log sum_{i,r} exp(-rho_{ir})                  (max-shifted for overflow)
///  Logistic:    (1/(mk)) sum_{i,r} log(1 + exp(-rho_{ir}))
double loss_value(LossKind kind, const MarginMatrix& margins);

/// Per-example, per-class dual weights, i.e. minus the derivative of the loss
/// with respect to each margin entry:
///  Exponential: U_{ir} = exp(-rho_{ir}) / sum exp(-rho)   (sums to 1 over the matrix)
///  Logistic:    U_{ir} = 1 / (mk (1 + exp(rho_{ir})))     (entries in [0, 1/(mk)])
/// Hinge has no margin-determined duals; requesting it throws InputError.
MatrixXd dual_weights_from_margins(LossKind kind, const MarginMatrix& margins);

/// n x k gradient of the smooth losses with respect to the weight matrix W,
/// where margins come from scores H*W under the given mode. Pairwise margins
/// couple each example's label column; one-vs-all margins decouple classes.
MatrixXd loss_gradient(LossKind kind, const MatrixXd& w, const MatrixXd& h,
                       const std::vector<int>& labels, int num_classes, MarginMode mode);

}  // namespace mcboost
