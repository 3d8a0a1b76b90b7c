#pragma once

#include <string>
#include <vector>

#include "mcboost/booster.hpp"
#include "mcboost/model.hpp"

namespace mcboost {

enum class DataFormat { Csv, Sparse };

/// CSV: label,feature,feature,... (comma separated, optional header line).
/// Sparse: "label index:value index:value..." with 1-based indices; absent
/// indices are zero. Labels are 1-based on disk and 0-based in memory;
/// num_classes is the largest label seen. Malformed content raises ParseError
/// with the offending line number.
Dataset load_dataset(const std::string& path, DataFormat format, bool csv_header = false);

void save_dataset_csv(const std::string& path, const Dataset& data);

/// Versioned text model format; doubles are printed with 17 significant
/// digits so a save/load round trip predicts bit-identically. Unknown
/// versions are rejected.
void save_model(const std::string& path, const EnsembleModel& model, const TrainConfig& config);
EnsembleModel load_model(const std::string& path);

/// Space-separated trace rows; parsing one back reproduces the written
/// values exactly.
void save_trace(const std::string& path, const std::vector<TraceRow>& trace);
std::vector<TraceRow> load_trace(const std::string& path);

/// One 1-based label per line.
void save_predictions(const std::string& path, const std::vector<int>& labels);

const char* loss_name(LossKind kind);
LossKind loss_from_name(const std::string& name);
RegKind reg_from_name(const std::string& name);

}  // namespace mcboost
