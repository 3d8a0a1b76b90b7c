#pragma once

#include <Eigen/Dense>

#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "mcboost/losses.hpp"
#include "mcboost/model.hpp"
#include "mcboost/regularizers.hpp"
#include "mcboost/simplex.hpp"

namespace mcboost {

/// Result of one fully corrective master solve: optimal stump weights, the
/// example weights that drive the next stump search, and diagnostics.
struct MasterSolution {
  Eigen::MatrixXd w;  // stumps x classes, nonnegative
  Eigen::MatrixXd u;  // examples x classes
  double objective = 0.0;
  double dual_objective = std::numeric_limits<double>::quiet_NaN();  // LP master only
  double primal_residual = std::numeric_limits<double>::quiet_NaN();
  double dual_residual = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
};

struct AdmmOptions {
  double lambda = 1.0;
  int max_iterations = 500;
  double tolerance = 1e-6;
  double wstep_tolerance = 1e-8;
  int wstep_max_iterations = 4000;
  // One-vs-all margins split the W-step into independent per-class solves;
  // this forces the joint solve instead (kept for equivalence testing).
  bool joint_wstep = false;
};

struct SmoothMasterOptions {
  double tolerance = 1e-7;
  int max_iterations = 5000;
};

/// Hinge loss with an elementwise l1 penalty, solved exactly as a linear
/// program. The LP is kept in its dual form (example weights U are the LP
/// variables) so each new stump appends rows instead of columns, which a
/// dual-simplex warm restart absorbs cheaply.
class HingeLpMaster {
 public:
  HingeLpMaster(std::vector<int> labels, int num_classes, double nu);

  void add_column(const Eigen::VectorXd& h);
  Eigen::Index num_columns() const { return static_cast<Eigen::Index>(columns_.size()); }

  MasterSolution solve();

 private:
  std::vector<int> labels_;
  int num_classes_;
  double nu_;
  Eigen::Index m_;
  std::vector<Eigen::VectorXd> columns_;
  std::unique_ptr<SimplexSolver> lp_;
  bool solved_once_ = false;
};

/// Exponential loss with l1 penalty: minimizes the log-sum-exp surrogate over
/// W >= 0 with a projected quasi-Newton method. `warm_w` (if given) must have
/// one row per column of `h` and seeds the iteration.
MasterSolution solve_exp_l1(const Eigen::MatrixXd& h, const std::vector<int>& labels,
                            int num_classes, double nu, const SmoothMasterOptions& options,
                            const Eigen::MatrixXd* warm_w = nullptr);

/// Scaled-dual ADMM state carried between boosting iterations. When a stump is
/// added the caller appends a zero row to every matrix before resolving.
struct AdmmWarmState {
  Eigen::MatrixXd z;
  std::vector<Eigen::MatrixXd> u;  // one per block
};

struct HingeAdmmWarmState {
  Eigen::MatrixXd z;
  Eigen::MatrixXd u;
  Eigen::MatrixXd alpha;  // inner dual weights, one simplex row per example
};

/// Logistic loss with any of the three penalties, minimized by consensus ADMM
/// over contiguous row blocks of the data. A single block covering all rows is
/// the ordinary (non-distributed) master. `mode` selects pairwise or
/// one-vs-all margins; one-vs-all decomposes the W-step by class.
/// `monotonicity_cap` (if finite) makes the solver keep iterating at tightened
/// tolerances until the returned objective does not exceed it.
MasterSolution solve_logistic_admm(const Eigen::MatrixXd& h, const std::vector<int>& labels,
                                   int num_classes, RegKind reg, double nu, MarginMode mode,
                                   const std::vector<std::pair<Eigen::Index, Eigen::Index>>& blocks,
                                   const AdmmOptions& options, AdmmWarmState* warm = nullptr,
                                   double monotonicity_cap =
                                       std::numeric_limits<double>::infinity());

/// One proximal W-step of the logistic master on the full data:
///     argmin_{w >= 0} logistic_loss(w) + (lambda/2) |w - v|_F^2.
/// With one-vs-all margins and per_class=true each class column is solved
/// independently; the concatenation must match the joint solve, which is the
/// decomposition the fast mode relies on.
Eigen::MatrixXd logistic_wstep(const Eigen::MatrixXd& h, const std::vector<int>& labels,
                               int num_classes, MarginMode mode, const Eigen::MatrixXd& v,
                               double lambda, bool per_class, double tolerance = 1e-10,
                               int max_iterations = 10000);

/// Multiclass hinge loss with a row-wise penalty, minimized by ADMM. The
/// W-step is itself solved in its dual (a simplex-projected coordinate ascent
/// over per-example weight rows), whose optimum also supplies the example
/// weights returned in `u`.
MasterSolution solve_hinge_admm(const Eigen::MatrixXd& h, const std::vector<int>& labels,
                                int num_classes, RegKind reg, double nu,
                                const AdmmOptions& options, HingeAdmmWarmState* warm = nullptr,
                                double monotonicity_cap =
                                    std::numeric_limits<double>::infinity());

/// Evenly sized contiguous row ranges, used for the distributed master.
std::vector<std::pair<Eigen::Index, Eigen::Index>> make_blocks(Eigen::Index rows, int count);

}  // namespace mcboost
