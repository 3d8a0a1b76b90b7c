#pragma once

#include "mcboost/model.hpp"

namespace mcboost {

/// Weighting scheme for the pricing step.
///  Hinge:    G_{ir} = [r == y_i] - U_{ir}
///  Gradient: G_{ir} = [r == y_i] * sum_l U_{il} - U_{ir}
enum class EdgeKind { Hinge, Gradient };

/// m x k matrix of per-example, per-class pricing weights.
MatrixXd edge_weights(const MatrixXd& u, const std::vector<int>& labels, int num_classes,
                      EdgeKind kind);

struct StumpSearchResult {
  DecisionStump stump;
  int cls = 0;
  double edge = 0.0;  // sum_i G_{i,cls} * h(x_i)
};

/// Exhaustive stump search over all features, candidate thresholds, both
/// polarities, and all classes. Candidate thresholds per feature are the
/// midpoints of consecutive distinct sorted values plus one sentinel below
/// the minimum (so the all-positive column is always a candidate).
///
/// Ties on the edge resolve to the lexicographically smallest candidate in
/// (feature, threshold, polarity with +1 first, class) order.
///
/// Sort orders are cached, so repeated searches over the same points cost
/// O(d * m * k) each.
class StumpSearch {
 public:
  explicit StumpSearch(const MatrixXd& x);

  StumpSearchResult best(const MatrixXd& g) const;

  const MatrixXd& points() const { return x_; }

 private:
  MatrixXd x_;
  // order_[f] = row indices of x_ sorted ascending by feature f
  std::vector<std::vector<Eigen::Index>> order_;
};

/// One-off search; builds the sort cache and discards it.
StumpSearchResult best_stump(const MatrixXd& x, const MatrixXd& g);

/// Per-class edges of a response column: (G' h) as a length-k vector.
VectorXd class_edges(const VectorXd& column, const MatrixXd& g);

}  // namespace mcboost
