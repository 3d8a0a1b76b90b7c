#include <random>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mcboost/weak_learner.hpp"

using namespace mcboost;

TEST_CASE("edge weights by hand") {
  MatrixXd u(2, 2);
  u << 0.2, 0.3, 0.1, 0.4;
  const std::vector<int> labels = {0, 1};

  const MatrixXd hinge = edge_weights(u, labels, 2, EdgeKind::Hinge);
  CHECK(hinge(0, 0) == doctest::Approx(0.8));
  CHECK(hinge(0, 1) == doctest::Approx(-0.3));
  CHECK(hinge(1, 0) == doctest::Approx(-0.1));
  CHECK(hinge(1, 1) == doctest::Approx(0.6));

  const MatrixXd grad = edge_weights(u, labels, 2, EdgeKind::Gradient);
  CHECK(grad(0, 0) == doctest::Approx(0.3));  // row sum 0.5 at the label
  CHECK(grad(0, 1) == doctest::Approx(-0.3));
  CHECK(grad(1, 0) == doctest::Approx(-0.1));
  CHECK(grad(1, 1) == doctest::Approx(0.1));
}

TEST_CASE("class edges are plain dot products") {
  MatrixXd g(3, 2);
  g << 1.0, -1.0, 0.5, 0.5, -0.25, 2.0;
  VectorXd column(3);
  column << 1.0, -1.0, 1.0;
  const VectorXd e = class_edges(column, g);
  CHECK(e[0] == doctest::Approx(1.0 - 0.5 - 0.25));
  CHECK(e[1] == doctest::Approx(-1.0 - 0.5 + 2.0));
}

namespace {

// Reference search: every feature, every midpoint threshold plus a sentinel
// below the minimum, both polarities, every class, same tie-break order.
StumpSearchResult brute_force(const MatrixXd& x, const MatrixXd& g) {
  StumpSearchResult best;
  bool first = true;
  for (Eigen::Index f = 0; f < x.cols(); ++f) {
    std::vector<double> values(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) values[static_cast<size_t>(i)] = x(i, f);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<double> thresholds;
    thresholds.push_back(values.front() - 1.0);
    for (size_t v = 0; v + 1 < values.size(); ++v)
      thresholds.push_back(0.5 * (values[v] + values[v + 1]));
    for (double thr : thresholds) {
      for (int pol : {1, -1}) {
        DecisionStump stump{static_cast<int>(f), thr, pol};
        VectorXd column(x.rows());
        for (Eigen::Index i = 0; i < x.rows(); ++i) column[i] = stump.evaluate(x.row(i));
        for (int cls = 0; cls < g.cols(); ++cls) {
          const double edge = column.dot(g.col(cls));
          if (first || edge > best.edge + 1e-12) {
            best = {stump, cls, edge};
            first = false;
          }
        }
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("stump search matches exhaustive enumeration") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> grid(-3, 3);  // coarse values force ties
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index m = 20, d = 3;
    const int k = 3;
    MatrixXd x(m, d);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < d; ++j) x(i, j) = grid(rng) * 0.5;
    MatrixXd g(m, k);
    for (Eigen::Index i = 0; i < m; ++i)
      for (int r = 0; r < k; ++r) g(i, r) = weight(rng);

    const StumpSearchResult got = best_stump(x, g);
    const StumpSearchResult want = brute_force(x, g);
    CHECK(got.edge == doctest::Approx(want.edge).epsilon(1e-10));
    // the winning edge must actually be attained by the returned stump
    VectorXd column(m);
    for (Eigen::Index i = 0; i < m; ++i) column[i] = got.stump.evaluate(x.row(i));
    CHECK(column.dot(g.col(got.cls)) == doctest::Approx(got.edge).epsilon(1e-12));
  }
}

TEST_CASE("repeated searches reuse the cache consistently") {
  std::mt19937_64 rng(12);
  const Dataset data = testutil::random_dataset(rng, 30, 2, 2);
  StumpSearch search(data.x);
  MatrixXd g = testutil::random_responses(rng, 30, 2) * 0.1;
  const StumpSearchResult once = search.best(g);
  const StumpSearchResult twice = search.best(g);
  CHECK(once.stump.feature == twice.stump.feature);
  CHECK(once.stump.threshold == twice.stump.threshold);
  CHECK(once.stump.polarity == twice.stump.polarity);
  CHECK(once.cls == twice.cls);
  CHECK(once.edge == twice.edge);
}
