#pragma once

#include "mcboost/model.hpp"

namespace mcboost {

/// Row-structured regularizers on the n x k weight matrix.
///  L1:    sum of absolute entries
///  L12:   sum over rows of the row's l2 norm
///  L1Inf: sum over rows of the row's max absolute entry
enum class RegKind { L1, L12, L1Inf };

double norm_value(RegKind kind, const MatrixXd& w);

/// Proximal map of kappa * (row norm) at a single row v:
///  L1:    componentwise shrinkage (1 - kappa/|v_i|)_+ v_i
///  L12:   block shrinkage (1 - kappa/||v||_2)_+ v
///  L1Inf: v minus the projection of v onto the l1 ball of radius kappa
VectorXd prox_row(RegKind kind, const VectorXd& v, double kappa);

/// prox_row applied independently to every row of a weight matrix. The mixed
/// norms separate across rows, so this is the proximal map of kappa * Omega.
MatrixXd prox_rows(RegKind kind, const MatrixXd& v, double kappa);

/// Euclidean projection onto { z : ||z||_1 <= radius }, sort-then-threshold.
VectorXd project_l1_ball(const VectorXd& v, double radius);

/// Scalar the pricing loop compares against nu + eps to decide termination,
/// computed from the chosen stump's per-class edge vector:
///  L1:    max_r e_r
///  L12:   ||e||_2
///  L1Inf: sum_r max(e_r, 0)
double stopping_margin(RegKind kind, const VectorXd& class_edges);

const char* reg_name(RegKind kind);

}  // namespace mcboost
