#include "mcboost/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace mcboost {

namespace {

std::string fmt(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<std::string> split_spaces(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

double parse_double(const std::string& token, long line) {
  if (token.empty()) throw ParseError("empty numeric field", line);
  const char* begin = token.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end != begin + token.size()) throw ParseError("bad numeric value '" + token + "'", line);
  return value;
}

long parse_long(const std::string& token, long line) {
  if (token.empty()) throw ParseError("empty integer field", line);
  const char* begin = token.c_str();
  char* end = nullptr;
  const long value = std::strtol(begin, &end, 10);
  if (end != begin + token.size()) throw ParseError("bad integer value '" + token + "'", line);
  return value;
}

int parse_label(const std::string& token, long line) {
  const long label = parse_long(token, line);
  if (label < 1) throw ParseError("labels are 1-based; got " + token, line);
  if (label > 1000000) throw ParseError("label out of range: " + token, line);
  return static_cast<int>(label);
}

Dataset finish_dataset(std::vector<std::vector<double>> rows, std::vector<int> labels_1based,
                       Eigen::Index dims) {
  Dataset data;
  const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
  data.x.resize(m, dims);
  data.labels.resize(static_cast<size_t>(m));
  int max_label = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& row = rows[static_cast<size_t>(i)];
    for (Eigen::Index j = 0; j < dims; ++j) data.x(i, j) = row[static_cast<size_t>(j)];
    const int label = labels_1based[static_cast<size_t>(i)];
    data.labels[static_cast<size_t>(i)] = label - 1;
    max_label = std::max(max_label, label);
  }
  data.num_classes = max_label;
  return data;
}

Dataset load_csv(std::istream& in, bool header) {
  long lineno = 0;
  std::string line;
  if (header) {
    if (!std::getline(in, line)) throw ParseError("empty dataset file", 1);
    ++lineno;
  }
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  Eigen::Index dims = -1;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    const std::vector<std::string> fields = split_csv(line);
    if (fields.empty()) throw ParseError("empty line", lineno);
    labels.push_back(parse_label(fields[0], lineno));
    std::vector<double> row;
    row.reserve(fields.size() - 1);
    for (size_t j = 1; j < fields.size(); ++j) row.push_back(parse_double(fields[j], lineno));
    if (dims < 0) {
      dims = static_cast<Eigen::Index>(row.size());
    } else if (dims != static_cast<Eigen::Index>(row.size())) {
      throw ParseError("row has " + std::to_string(row.size()) + " features, expected " +
                           std::to_string(dims),
                       lineno);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty dataset file", lineno == 0 ? 1 : lineno);
  return finish_dataset(std::move(rows), std::move(labels), dims);
}

Dataset load_sparse(std::istream& in) {
  long lineno = 0;
  std::string line;
  std::vector<std::vector<std::pair<Eigen::Index, double>>> rows;
  std::vector<int> labels;
  Eigen::Index dims = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    const std::vector<std::string> tokens = split_spaces(line);
    if (tokens.empty()) throw ParseError("empty line", lineno);
    labels.push_back(parse_label(tokens[0], lineno));
    std::vector<std::pair<Eigen::Index, double>> entries;
    std::set<Eigen::Index> seen;
    for (size_t t = 1; t < tokens.size(); ++t) {
      const std::string& token = tokens[t];
      const size_t colon = token.find(':');
      if (colon == std::string::npos)
        throw ParseError("expected index:value, got '" + token + "'", lineno);
      const long index = parse_long(token.substr(0, colon), lineno);
      if (index < 1) throw ParseError("feature indices are 1-based", lineno);
      if (!seen.insert(index).second)
        throw ParseError("duplicate feature index " + std::to_string(index), lineno);
      const double value = parse_double(token.substr(colon + 1), lineno);
      entries.emplace_back(index - 1, value);
      dims = std::max(dims, static_cast<Eigen::Index>(index));
    }
    rows.push_back(std::move(entries));
  }
  if (rows.empty()) throw ParseError("empty dataset file", 1);

  Dataset data;
  const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
  data.x = MatrixXd::Zero(m, dims);
  data.labels.resize(static_cast<size_t>(m));
  int max_label = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (const auto& [j, value] : rows[static_cast<size_t>(i)]) data.x(i, j) = value;
    const int label = labels[static_cast<size_t>(i)];
    data.labels[static_cast<size_t>(i)] = label - 1;
    max_label = std::max(max_label, label);
  }
  data.num_classes = max_label;
  return data;
}

}  // namespace

Dataset load_dataset(const std::string& path, DataFormat format, bool csv_header) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open dataset file: " + path);
  return format == DataFormat::Csv ? load_csv(in, csv_header) : load_sparse(in);
}

void save_dataset_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write dataset file: " + path);
  for (Eigen::Index i = 0; i < data.m(); ++i) {
    out << data.labels[static_cast<size_t>(i)] + 1;
    for (Eigen::Index j = 0; j < data.dims(); ++j) out << ',' << fmt(data.x(i, j));
    out << '\n';
  }
}

void save_model(const std::string& path, const EnsembleModel& model, const TrainConfig& config) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write model file: " + path);
  out << "mcboost-model 1\n";
  out << "classes " << model.num_classes << "\n";
  out << "stumps " << model.size() << "\n";
  out << "config loss=" << loss_name(config.loss) << " reg=" << reg_name(config.reg)
      << " nu=" << fmt(config.nu) << " iters=" << config.max_stumps << " eps=" << fmt(config.eps)
      << " mode=" << (config.fast_mode ? "fast" : "pairwise")
      << " admm-lambda=" << fmt(config.admm.lambda) << " admm-iters=" << config.admm.max_iterations
      << " blocks=" << config.blocks << " seed=" << config.seed << "\n";
  for (Eigen::Index j = 0; j < model.size(); ++j) {
    const DecisionStump& stump = model.stumps[static_cast<size_t>(j)];
    out << "stump " << stump.feature << ' ' << fmt(stump.threshold) << ' ' << stump.polarity;
    for (int r = 0; r < model.num_classes; ++r) out << ' ' << fmt(model.weights(j, r));
    out << '\n';
  }
}

EnsembleModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file: " + path);
  long lineno = 0;
  std::string line;

  auto next_line = [&]() {
    if (!std::getline(in, line)) throw ParseError("truncated model file", lineno + 1);
    ++lineno;
    strip_cr(line);
  };

  next_line();
  {
    const std::vector<std::string> tokens = split_spaces(line);
    if (tokens.size() != 2 || tokens[0] != "mcboost-model")
      throw ParseError("not a model file", lineno);
    if (parse_long(tokens[1], lineno) != 1)
      throw ParseError("unsupported model format version " + tokens[1], lineno);
  }
  next_line();
  std::vector<std::string> tokens = split_spaces(line);
  if (tokens.size() != 2 || tokens[0] != "classes")
    throw ParseError("expected 'classes <k>'", lineno);
  const long k = parse_long(tokens[1], lineno);
  if (k < 2 || k > 1000000) throw ParseError("bad class count", lineno);
  next_line();
  tokens = split_spaces(line);
  if (tokens.size() != 2 || tokens[0] != "stumps")
    throw ParseError("expected 'stumps <n>'", lineno);
  const long n = parse_long(tokens[1], lineno);
  if (n < 0) throw ParseError("bad stump count", lineno);

  EnsembleModel model;
  model.num_classes = static_cast<int>(k);
  model.weights.resize(n, k);

  bool config_skipped = false;
  for (long j = 0; j < n; ++j) {
    next_line();
    if (!config_skipped && line.rfind("config", 0) == 0) {
      config_skipped = true;
      --j;
      continue;
    }
    tokens = split_spaces(line);
    if (tokens.size() != static_cast<size_t>(4 + k) || tokens[0] != "stump")
      throw ParseError("expected 'stump <feature> <threshold> <polarity> <weights...>'", lineno);
    DecisionStump stump;
    stump.feature = static_cast<int>(parse_long(tokens[1], lineno));
    stump.threshold = parse_double(tokens[2], lineno);
    stump.polarity = static_cast<int>(parse_long(tokens[3], lineno));
    if (stump.feature < 0) throw ParseError("negative feature index", lineno);
    if (stump.polarity != 1 && stump.polarity != -1)
      throw ParseError("polarity must be +1 or -1", lineno);
    model.stumps.push_back(stump);
    for (long r = 0; r < k; ++r) {
      model.weights(j, r) = parse_double(tokens[static_cast<size_t>(4 + r)], lineno);
    }
  }
  if (n == 0 && std::getline(in, line)) {
    // Zero-stump models may still carry a config line.
    strip_cr(line);
    ++lineno;
    if (line.rfind("config", 0) != 0 && !line.empty())
      throw ParseError("unexpected content after model", lineno);
  }
  return model;
}

void save_trace(const std::string& path, const std::vector<TraceRow>& trace) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write trace file: " + path);
  for (const TraceRow& row : trace) {
    out << row.iteration << ' ' << row.stump.feature << ' ' << fmt(row.stump.threshold) << ' '
        << row.stump.polarity << ' ' << row.cls << ' ' << fmt(row.edge) << ' '
        << fmt(row.stopping_margin) << ' ' << fmt(row.objective) << ' ' << fmt(row.train_error)
        << ' ' << fmt(row.test_error) << '\n';
  }
}

std::vector<TraceRow> load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open trace file: " + path);
  std::vector<TraceRow> trace;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    const std::vector<std::string> tokens = split_spaces(line);
    if (tokens.size() != 10) throw ParseError("expected 10 trace fields", lineno);
    TraceRow row;
    row.iteration = static_cast<int>(parse_long(tokens[0], lineno));
    row.stump.feature = static_cast<int>(parse_long(tokens[1], lineno));
    row.stump.threshold = parse_double(tokens[2], lineno);
    row.stump.polarity = static_cast<int>(parse_long(tokens[3], lineno));
    row.cls = static_cast<int>(parse_long(tokens[4], lineno));
    row.edge = parse_double(tokens[5], lineno);
    row.stopping_margin = parse_double(tokens[6], lineno);
    row.objective = parse_double(tokens[7], lineno);
    row.train_error = parse_double(tokens[8], lineno);
    row.test_error = parse_double(tokens[9], lineno);
    trace.push_back(row);
  }
  return trace;
}

void save_predictions(const std::string& path, const std::vector<int>& labels) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write predictions file: " + path);
  for (const int label : labels) out << label + 1 << '\n';
}

const char* loss_name(LossKind kind) {
  switch (kind) {
    case LossKind::Hinge:
      return "hinge";
    case LossKind::Exponential:
      return "exp";
    case LossKind::Logistic:
      return "logistic";
  }
  return "?";
}

LossKind loss_from_name(const std::string& name) {
  if (name == "hinge") return LossKind::Hinge;
  if (name == "exp") return LossKind::Exponential;
  if (name == "logistic") return LossKind::Logistic;
  throw InputError("unknown loss '" + name + "' (expected hinge, exp, or logistic)");
}

RegKind reg_from_name(const std::string& name) {
  if (name == "l1") return RegKind::L1;
  if (name == "l12") return RegKind::L12;
  if (name == "l1inf") return RegKind::L1Inf;
  throw InputError("unknown regularizer '" + name + "' (expected l1, l12, or l1inf)");
}

}  // namespace mcboost
