#include "mcboost/weak_learner.hpp"

#include <algorithm>
#include <numeric>

namespace mcboost {

MatrixXd edge_weights(const MatrixXd& u, const std::vector<int>& labels, int num_classes,
                      EdgeKind kind) {
  const Eigen::Index m = u.rows();
  if (m != static_cast<Eigen::Index>(labels.size()))
    throw InputError("dual weight rows and label count differ");
  if (u.cols() != num_classes) throw InputError("dual weight columns and class count differ");
  MatrixXd g = -u;
  for (Eigen::Index i = 0; i < m; ++i) {
    const int y = labels[static_cast<size_t>(i)];
    g(i, y) += kind == EdgeKind::Hinge ? 1.0 : u.row(i).sum();
  }
  return g;
}

StumpSearch::StumpSearch(const MatrixXd& x) : x_(x) {
  if (x_.rows() == 0 || x_.cols() == 0) throw InputError("empty point set");
  if (!x_.allFinite()) throw InputError("features contain NaN or Inf");
  order_.resize(static_cast<size_t>(x_.cols()));
  for (Eigen::Index f = 0; f < x_.cols(); ++f) {
    auto& ord = order_[static_cast<size_t>(f)];
    ord.resize(static_cast<size_t>(x_.rows()));
    std::iota(ord.begin(), ord.end(), Eigen::Index{0});
    std::stable_sort(ord.begin(), ord.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return x_(a, f) < x_(b, f); });
  }
}

StumpSearchResult StumpSearch::best(const MatrixXd& g) const {
  const Eigen::Index m = x_.rows();
  const Eigen::Index k = g.cols();
  if (g.rows() != m) throw InputError("edge weight rows and point count differ");

  const Eigen::RowVectorXd total = g.colwise().sum();
  bool found = false;
  StumpSearchResult best;

  // Edges for polarity +1 at a threshold t are total_r - 2 * prefix_r where
  // prefix_r sums g over points with value <= t; polarity -1 negates. The
  // candidate walk matches the tie-break order, and a strict > keeps the
  // first maximizer, so ties resolve lexicographically for free.
  Eigen::RowVectorXd prefix(k);
  auto consider = [&](int f, double threshold) {
    for (int polarity : {1, -1}) {
      for (Eigen::Index r = 0; r < k; ++r) {
        const double e = polarity * (total[r] - 2.0 * prefix[r]);
        if (!found || e > best.edge) {
          found = true;
          best.edge = e;
          best.cls = static_cast<int>(r);
          best.stump = DecisionStump{f, threshold, polarity};
        }
      }
    }
  };

  for (Eigen::Index f = 0; f < x_.cols(); ++f) {
    const auto& ord = order_[static_cast<size_t>(f)];
    prefix.setZero();
    consider(static_cast<int>(f), x_(ord.front(), f) - 1.0);  // sentinel below the minimum
    for (size_t t = 0; t < ord.size(); ++t) {
      prefix += g.row(ord[t]);
      if (t + 1 < ord.size()) {
        const double lo = x_(ord[t], f);
        const double hi = x_(ord[t + 1], f);
        if (lo < hi) consider(static_cast<int>(f), 0.5 * (lo + hi));
      }
    }
  }

  // Report the edge of the winning candidate from an explicit dot product so
  // the returned scalar matches the returned column exactly.
  best.edge = class_edges(stump_column(best.stump, x_), g)[best.cls];
  return best;
}

StumpSearchResult best_stump(const MatrixXd& x, const MatrixXd& g) {
  return StumpSearch(x).best(g);
}

VectorXd class_edges(const VectorXd& column, const MatrixXd& g) {
  if (column.size() != g.rows()) throw InputError("column and edge weight sizes differ");
  return g.transpose() * column;
}

}  // namespace mcboost
