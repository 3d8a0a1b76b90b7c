#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "mcboost/model.hpp"

using namespace mcboost;

TEST_CASE("validate rejects inconsistent datasets") {
  Dataset data;
  data.x.resize(2, 1);
  data.x << 0.0, 1.0;
  data.labels = {0, 1};
  data.num_classes = 2;
  CHECK_NOTHROW(validate(data, true));

  Dataset bad = data;
  bad.labels = {0};
  CHECK_THROWS_AS(validate(bad), InputError);

  bad = data;
  bad.labels = {0, 2};
  CHECK_THROWS_AS(validate(bad), InputError);

  bad = data;
  bad.x(1, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate(bad), InputError);

  // all classes must occur only under the stricter check
  Dataset missing = data;
  missing.labels = {0, 0};
  CHECK_NOTHROW(validate(missing, false));
  CHECK_THROWS_AS(validate(missing, true), InputError);
}

TEST_CASE("stump evaluation and response columns") {
  DecisionStump stump{0, 0.5, 1};
  MatrixXd x(3, 2);
  x << 0.0, 9.0, 0.5, 9.0, 1.0, 9.0;
  // strict inequality: the point at the threshold goes negative
  CHECK(stump.evaluate(x.row(0)) == -1.0);
  CHECK(stump.evaluate(x.row(1)) == -1.0);
  CHECK(stump.evaluate(x.row(2)) == 1.0);

  DecisionStump flipped{0, 0.5, -1};
  CHECK(flipped.evaluate(x.row(0)) == 1.0);
  CHECK(flipped.evaluate(x.row(2)) == -1.0);

  const MatrixXd h = response_matrix({stump, flipped}, x);
  CHECK(h.rows() == 3);
  CHECK(h.cols() == 2);
  CHECK((h.col(0).array() == -h.col(1).array()).all());
  CHECK((h.array().abs() == 1.0).all());
  CHECK(stump_column(stump, x) == h.col(0));
}

TEST_CASE("pairwise margins zero the label column") {
  MatrixXd scores(2, 3);
  scores << 1.0, 0.5, -0.25, 0.0, 2.0, 1.0;
  const std::vector<int> labels = {0, 1};
  const MarginMatrix rho = margins_from_scores(scores, labels, MarginMode::Pairwise);
  CHECK(rho.rho(0, 0) == 0.0);
  CHECK(rho.rho(0, 1) == doctest::Approx(0.5));
  CHECK(rho.rho(0, 2) == doctest::Approx(1.25));
  CHECK(rho.rho(1, 1) == 0.0);
  CHECK(rho.rho(1, 0) == doctest::Approx(2.0));
  CHECK(rho.rho(1, 2) == doctest::Approx(1.0));
}

TEST_CASE("one-vs-all margins flip non-label scores") {
  MatrixXd scores(1, 3);
  scores << 1.0, 0.5, -0.25;
  const MarginMatrix rho = margins_from_scores(scores, {0}, MarginMode::OneVsAll);
  CHECK(rho.rho(0, 0) == doctest::Approx(1.0));
  CHECK(rho.rho(0, 1) == doctest::Approx(-0.5));
  CHECK(rho.rho(0, 2) == doctest::Approx(0.25));

  const MatrixXd y = label_signs({0, 2}, 3);
  CHECK(y(0, 0) == 1.0);
  CHECK(y(0, 1) == -1.0);
  CHECK(y(1, 2) == 1.0);
  CHECK(y(1, 0) == -1.0);
}

TEST_CASE("prediction breaks ties toward the smaller class") {
  EnsembleModel model;
  model.num_classes = 2;
  model.stumps = {DecisionStump{0, 0.0, 1}};
  model.weights.resize(1, 2);
  model.weights << 0.5, 0.5;  // equal scores everywhere
  MatrixXd x(1, 1);
  x << 1.0;
  CHECK(predict_one(model, x.row(0)) == 0);
}

TEST_CASE("error rate counts mismatches") {
  EnsembleModel model;
  model.num_classes = 2;
  model.stumps = {DecisionStump{0, 0.0, 1}};
  model.weights.resize(1, 2);
  model.weights << 1.0, 0.0;  // class 0 wins right of 0, class 1 left of it
  Dataset data;
  data.x.resize(4, 1);
  data.x << 1.0, 2.0, -1.0, -2.0;
  data.labels = {0, 0, 1, 0};
  data.num_classes = 2;
  CHECK(error_rate(model, data) == doctest::Approx(0.25));
}

TEST_CASE("margins of an empty model are zero scores") {
  EnsembleModel model;
  model.num_classes = 2;
  model.weights.resize(0, 2);
  Dataset data;
  data.x.resize(2, 1);
  data.x << 0.0, 1.0;
  data.labels = {0, 1};
  data.num_classes = 2;
  const MarginMatrix rho = margins(model, data, MarginMode::Pairwise);
  CHECK(rho.rho.isZero(0.0));
}

TEST_CASE("sharing counts threshold per-class weights") {
  MatrixXd w(3, 4);
  w << 1.0, 0.0, 0.0, 0.0,     // single class
      0.5, 0.5, 1e-12, 0.0,    // two classes, one below threshold
      0.1, 0.1, 0.1, 0.1;      // all four
  const std::vector<int> counts = sharing_counts(w);
  CHECK(counts == std::vector<int>{1, 2, 4});
}
