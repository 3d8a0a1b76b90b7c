#include "mcboost/model.hpp"

#include <cmath>

namespace mcboost {

void validate(const Dataset& data, bool require_all_classes) {
  if (data.num_classes < 2) throw InputError("dataset needs at least 2 classes");
  if (data.x.rows() != static_cast<Eigen::Index>(data.labels.size()))
    throw InputError("feature rows and label count differ");
  if (!data.x.allFinite()) throw InputError("features contain NaN or Inf");
  std::vector<long> counts(data.num_classes, 0);
  for (int y : data.labels) {
    if (y < 0 || y >= data.num_classes) throw InputError("label out of range");
    ++counts[y];
  }
  if (require_all_classes) {
    for (int c = 0; c < data.num_classes; ++c)
      if (counts[c] == 0)
        throw InputError("class " + std::to_string(c + 1) + " has no training points");
  }
}

MatrixXd response_matrix(const std::vector<DecisionStump>& stumps, const MatrixXd& x) {
  MatrixXd h(x.rows(), static_cast<Eigen::Index>(stumps.size()));
  for (Eigen::Index j = 0; j < h.cols(); ++j) h.col(j) = stump_column(stumps[j], x);
  return h;
}

VectorXd stump_column(const DecisionStump& stump, const MatrixXd& x) {
  if (stump.feature < 0 || stump.feature >= x.cols())
    throw InputError("stump feature index out of range");
  VectorXd col(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) col[i] = stump.evaluate(x.row(i));
  return col;
}

MarginMatrix margins_from_scores(const MatrixXd& scores, const std::vector<int>& labels,
                                 MarginMode mode) {
  const Eigen::Index m = scores.rows();
  const Eigen::Index k = scores.cols();
  if (m != static_cast<Eigen::Index>(labels.size()))
    throw InputError("score rows and label count differ");
  MarginMatrix out;
  out.mode = mode;
  out.labels = labels;
  out.rho.resize(m, k);
  for (Eigen::Index i = 0; i < m; ++i) {
    const int y = labels[static_cast<size_t>(i)];
    if (mode == MarginMode::Pairwise) {
      out.rho.row(i) = (scores(i, y) - scores.row(i).array()).matrix();
    } else {
      out.rho.row(i) = -scores.row(i);
      out.rho(i, y) = scores(i, y);
    }
  }
  return out;
}

MarginMatrix margins(const EnsembleModel& model, const Dataset& data, MarginMode mode) {
  if (model.weights.rows() != model.size())
    throw InputError("model weight rows and stump count differ");
  if (model.num_classes != data.num_classes)
    throw InputError("model and dataset class counts differ");
  MatrixXd scores;
  if (model.size() == 0) {
    scores = MatrixXd::Zero(data.m(), data.num_classes);
  } else {
    scores = response_matrix(model.stumps, data.x) * model.weights;
  }
  return margins_from_scores(scores, data.labels, mode);
}

MatrixXd label_signs(const std::vector<int>& labels, int num_classes) {
  MatrixXd y = MatrixXd::Constant(static_cast<Eigen::Index>(labels.size()), num_classes, -1.0);
  for (size_t i = 0; i < labels.size(); ++i) y(static_cast<Eigen::Index>(i), labels[i]) = 1.0;
  return y;
}

int predict_one(const EnsembleModel& model, const Eigen::Ref<const Eigen::RowVectorXd>& x) {
  Eigen::RowVectorXd scores = Eigen::RowVectorXd::Zero(model.num_classes);
  for (size_t j = 0; j < model.stumps.size(); ++j) {
    const DecisionStump& s = model.stumps[j];
    if (s.feature < 0 || s.feature >= x.cols())
      throw InputError("point has fewer features than the model expects");
    scores += s.evaluate(x) * model.weights.row(static_cast<Eigen::Index>(j));
  }
  int best = 0;
  for (int r = 1; r < model.num_classes; ++r)
    if (scores[r] > scores[best]) best = r;
  return best;
}

std::vector<int> predict(const EnsembleModel& model, const MatrixXd& x) {
  std::vector<int> out(static_cast<size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    out[static_cast<size_t>(i)] = predict_one(model, x.row(i));
  return out;
}

double error_rate(const EnsembleModel& model, const Dataset& data) {
  if (data.m() == 0) throw InputError("empty dataset");
  const std::vector<int> pred = predict(model, data.x);
  long wrong = 0;
  for (size_t i = 0; i < pred.size(); ++i)
    if (pred[i] != data.labels[i]) ++wrong;
  return static_cast<double>(wrong) / static_cast<double>(data.m());
}

std::vector<int> sharing_counts(const MatrixXd& weights, double threshold) {
  std::vector<int> counts(static_cast<size_t>(weights.rows()), 0);
  for (Eigen::Index j = 0; j < weights.rows(); ++j) {
    for (Eigen::Index r = 0; r < weights.cols(); ++r) {
      if (weights(j, r) > threshold) ++counts[static_cast<size_t>(j)];
    }
  }
  return counts;
}

}  // namespace mcboost
