#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace mcboost {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Bad user-supplied data or configuration.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed file content; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

/// A master solve ran out of iterations before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double primal_residual, double dual_residual,
                   int iterations)
      : std::runtime_error(what + " (primal residual " + std::to_string(primal_residual) +
                           ", dual residual " + std::to_string(dual_residual) + ", " +
                           std::to_string(iterations) + " iterations)"),
        primal_residual(primal_residual),
        dual_residual(dual_residual),
        iterations(iterations) {}
  double primal_residual;
  double dual_residual;
  int iterations;
};

/// Labeled points. Labels are 0-based internally; the I/O layer converts
/// from the 1-based on-disk convention.
struct Dataset {
  MatrixXd x;               // m x d
  std::vector<int> labels;  // size m, values in [0, num_classes)
  int num_classes = 0;

  Eigen::Index m() const { return x.rows(); }
  Eigen::Index dims() const { return x.cols(); }
};

/// Throws InputError unless sizes are consistent, features are finite,
/// labels are in range, and (when require_all_classes) every class occurs.
void validate(const Dataset& data, bool require_all_classes = false);

/// Threshold rule on one feature: h(x) = polarity if x[feature] > threshold,
/// else -polarity. Polarity is +1 or -1.
struct DecisionStump {
  int feature = 0;
  double threshold = 0.0;
  int polarity = 1;

  double evaluate(const Eigen::Ref<const Eigen::RowVectorXd>& row) const {
    return row[feature] > threshold ? double(polarity) : -double(polarity);
  }
};

/// Stump ensemble with one nonnegative weight per (stump, class) pair.
struct EnsembleModel {
  std::vector<DecisionStump> stumps;
  MatrixXd weights;  // n x k, elementwise >= 0
  int num_classes = 0;

  Eigen::Index size() const { return static_cast<Eigen::Index>(stumps.size()); }
};

/// m x n matrix of stump outputs, entries exactly +1 or -1.
MatrixXd response_matrix(const std::vector<DecisionStump>& stumps, const MatrixXd& x);

/// Column of stump outputs over a dataset's points.
VectorXd stump_column(const DecisionStump& stump, const MatrixXd& x);

/// How the m x k margin matrix is formed from per-class scores s = H*W:
///  Pairwise: rho_{ir} = s_{i,y_i} - s_{ir} (so rho_{i,y_i} = 0)
///  OneVsAll: rho_{ir} = s_{ir} if r == y_i else -s_{ir}
enum class MarginMode { Pairwise, OneVsAll };

struct MarginMatrix {
  MatrixXd rho;  // m x k
  MarginMode mode = MarginMode::Pairwise;
  std::vector<int> labels;  // kept so losses can skip the label column
};

/// Margins from a precomputed score matrix (m x k).
MarginMatrix margins_from_scores(const MatrixXd& scores, const std::vector<int>& labels,
                                 MarginMode mode);

/// Margins of a model on a dataset.
MarginMatrix margins(const EnsembleModel& model, const Dataset& data, MarginMode mode);

/// Sign matrix for the one-vs-all view: +1 where r == y_i, else -1.
MatrixXd label_signs(const std::vector<int>& labels, int num_classes);

/// argmax_r score with ties resolved to the smallest class index.
int predict_one(const EnsembleModel& model, const Eigen::Ref<const Eigen::RowVectorXd>& x);
std::vector<int> predict(const EnsembleModel& model, const MatrixXd& x);

/// Fraction of points whose predicted class differs from the label.
double error_rate(const EnsembleModel& model, const Dataset& data);

/// Per-stump count of classes whose weight exceeds the sharing threshold.
std::vector<int> sharing_counts(const MatrixXd& weights, double threshold = 1e-8);

}  // namespace mcboost
