#pragma once

#include <string>
#include <vector>

#include "mcboost/losses.hpp"
#include "mcboost/master_solvers.hpp"
#include "mcboost/model.hpp"
#include "mcboost/regularizers.hpp"

namespace mcboost {

struct TrainConfig {
  LossKind loss = LossKind::Logistic;
  RegKind reg = RegKind::L1;
  double nu = 0.1;
  int max_stumps = 100;
  double eps = 1e-4;       // slack on the dual-feasibility stopping test
  bool fast_mode = false;  // one-vs-all margins with per-class W-steps
  int blocks = 1;          // consensus workers; >1 distributes the master
  unsigned long long seed = 0;  // echoed into the model file
  AdmmOptions admm;
  SmoothMasterOptions smooth;
};

/// One admitted stump per row; objectives are non-increasing down the trace.
struct TraceRow {
  int iteration = 0;  // 1-based
  DecisionStump stump;
  int cls = 0;
  double edge = 0.0;
  double stopping_margin = 0.0;
  double objective = 0.0;
  double train_error = 0.0;
  double test_error = std::numeric_limits<double>::quiet_NaN();
};

struct TrainResult {
  EnsembleModel model;
  std::vector<TraceRow> trace;
  std::string stop_reason;  // "margin", "max_stumps", or "duplicate_column"
  MatrixXd final_u;         // example weights at the last master solve
};

/// Column-generation training loop: price the most violated stump against the
/// current example weights, stop when no stump beats nu + eps, otherwise admit
/// the stump and re-optimize every weight with the master matching (loss, reg).
/// `test` (optional) only adds per-iteration test error to the trace.
TrainResult train(const Dataset& data, const TrainConfig& config, const Dataset* test = nullptr);

/// Primal objective of a model: loss at its margins plus nu times the penalty.
double objective_value(const EnsembleModel& model, const Dataset& data, LossKind loss,
                       RegKind reg, double nu, MarginMode mode);

}  // namespace mcboost
