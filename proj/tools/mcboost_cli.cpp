#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mcboost/booster.hpp"
#include "mcboost/io.hpp"
#include "mcboost/synth_data.hpp"

namespace {

using namespace mcboost;

struct SharedDataFlags {
  std::string path;
  std::string format = "csv";
  bool csv_header = false;
};

void add_data_flags(CLI::App* cmd, SharedDataFlags& flags) {
  cmd->add_option("--data", flags.path, "dataset file")->required();
  cmd->add_option("--format", flags.format, "dataset format")
      ->check(CLI::IsMember({"csv", "sparse"}));
  cmd->add_flag("--csv-header", flags.csv_header, "skip the first line of a CSV file");
}

Dataset load_from_flags(const SharedDataFlags& flags) {
  return load_dataset(flags.path, flags.format == "csv" ? DataFormat::Csv : DataFormat::Sparse,
                      flags.csv_header);
}

int run_train(const SharedDataFlags& data_flags, const TrainConfig& config,
              const std::string& out_path, const std::string& trace_path) {
  const Dataset data = load_from_flags(data_flags);
  const TrainResult result = train(data, config);
  save_model(out_path, result.model, config);
  if (!trace_path.empty()) save_trace(trace_path, result.trace);
  if (result.stop_reason == "duplicate_column") {
    std::cerr << "warning: stopped after the best stump duplicated an admitted column\n";
  }
  std::cout << "stumps " << result.model.size() << "\n";
  std::cout << "stop " << result.stop_reason << "\n";
  if (!result.trace.empty()) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6f", result.trace.back().train_error);
    std::cout << "train-error " << buffer << "\n";
    std::snprintf(buffer, sizeof buffer, "%.9g", result.trace.back().objective);
    std::cout << "objective " << buffer << "\n";
  }
  return 0;
}

int run_predict(const std::string& model_path, const SharedDataFlags& data_flags,
                const std::string& out_path) {
  const EnsembleModel model = load_model(model_path);
  const Dataset data = load_from_flags(data_flags);
  const std::vector<int> labels = predict(model, data.x);
  if (out_path.empty()) {
    for (const int label : labels) std::cout << label + 1 << "\n";
  } else {
    save_predictions(out_path, labels);
  }
  return 0;
}

int run_eval(const std::string& model_path, const SharedDataFlags& data_flags) {
  const EnsembleModel model = load_model(model_path);
  const Dataset data = load_from_flags(data_flags);
  if (data.num_classes > model.num_classes) {
    throw InputError("dataset has more classes than the model");
  }
  const std::vector<int> predicted = predict(model, data.x);
  const int k = model.num_classes;

  long wrong = 0;
  std::vector<std::vector<long>> confusion(static_cast<size_t>(k),
                                           std::vector<long>(static_cast<size_t>(k), 0));
  for (size_t i = 0; i < predicted.size(); ++i) {
    const int truth = data.labels[i];
    ++confusion[static_cast<size_t>(truth)][static_cast<size_t>(predicted[i])];
    if (truth != predicted[i]) ++wrong;
  }
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f",
                static_cast<double>(wrong) / static_cast<double>(data.m()));
  std::cout << "error " << buffer << "\n";
  std::cout << "confusion rows=true cols=predicted\n";
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      std::cout << confusion[static_cast<size_t>(r)][static_cast<size_t>(c)]
                << (c + 1 == k ? "\n" : " ");
    }
  }

  const std::vector<int> counts = sharing_counts(model.weights);
  const int half = (k + 1) / 2;
  long single = 0, narrow = 0, wide = 0, dropped = 0;
  for (const int count : counts) {
    if (count == 0) {
      ++dropped;
    } else if (count == 1) {
      ++single;
    } else if (count <= half) {
      ++narrow;
    } else {
      ++wide;
    }
  }
  const long active = single + narrow + wide;
  auto percent = [&](long part) {
    std::snprintf(buffer, sizeof buffer, "%.1f",
                  active == 0 ? 0.0 : 100.0 * static_cast<double>(part) /
                                          static_cast<double>(active));
    return std::string(buffer);
  };
  std::cout << "sharing among 1 class: " << single << " (" << percent(single) << "%)\n";
  std::cout << "sharing among 2-" << half << " classes: " << narrow << " (" << percent(narrow)
            << "%)\n";
  std::cout << "sharing among >" << half << " classes: " << wide << " (" << percent(wide)
            << "%)\n";
  std::cout << "dropped stumps: " << dropped << "\n";
  return 0;
}

int run_synth(const std::string& kind, unsigned long long seed, const std::string& out_train,
              const std::string& out_test) {
  SynthSpec spec;
  spec.kind = kind == "gauss4" ? SynthKind::Gauss4 : SynthKind::Ring6;
  spec.seed = seed;
  const SynthPair pair = generate(spec);
  save_dataset_csv(out_train, pair.train);
  save_dataset_csv(out_test, pair.test);
  std::cout << "train " << pair.train.m() << "\n";
  std::cout << "test " << pair.test.m() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-class boosting with shared decision stumps"};
  app.require_subcommand(1);

  SharedDataFlags train_data;
  TrainConfig config;
  std::string loss = "logistic";
  std::string reg = "l1";
  std::string mode = "pairwise";
  std::string train_out;
  std::string trace_out;
  CLI::App* cmd_train = app.add_subcommand("train", "fit a stump ensemble");
  add_data_flags(cmd_train, train_data);
  cmd_train->add_option("--loss", loss, "training loss")
      ->check(CLI::IsMember({"hinge", "exp", "logistic"}));
  cmd_train->add_option("--reg", reg, "regularizer")
      ->check(CLI::IsMember({"l1", "l12", "l1inf"}));
  cmd_train->add_option("--nu", config.nu, "regularization strength")
      ->check(CLI::PositiveNumber);
  cmd_train->add_option("--iters", config.max_stumps, "maximum stumps")
      ->check(CLI::PositiveNumber);
  cmd_train->add_option("--eps", config.eps, "stopping slack")
      ->check(CLI::NonNegativeNumber);
  cmd_train->add_option("--mode", mode, "margin mode")
      ->check(CLI::IsMember({"pairwise", "fast"}));
  cmd_train->add_option("--admm-lambda", config.admm.lambda, "ADMM penalty parameter")
      ->check(CLI::PositiveNumber);
  cmd_train->add_option("--admm-iters", config.admm.max_iterations, "ADMM iteration cap")
      ->check(CLI::PositiveNumber);
  cmd_train->add_option("--blocks", config.blocks, "consensus blocks")
      ->check(CLI::PositiveNumber);
  cmd_train->add_option("--seed", config.seed, "seed echoed into the model file");
  cmd_train->add_option("--out", train_out, "model output file")->required();
  cmd_train->add_option("--trace", trace_out, "per-iteration trace output file");

  std::string predict_model;
  SharedDataFlags predict_data;
  std::string predict_out;
  CLI::App* cmd_predict = app.add_subcommand("predict", "label points with a model");
  cmd_predict->add_option("--model", predict_model, "model file")->required();
  add_data_flags(cmd_predict, predict_data);
  cmd_predict->add_option("--out", predict_out, "predictions file (default: stdout)");

  std::string eval_model;
  SharedDataFlags eval_data;
  CLI::App* cmd_eval = app.add_subcommand("eval", "error, confusion, and sharing report");
  cmd_eval->add_option("--model", eval_model, "model file")->required();
  add_data_flags(cmd_eval, eval_data);

  std::string synth_kind;
  unsigned long long synth_seed = 0;
  std::string synth_train, synth_test;
  CLI::App* cmd_synth = app.add_subcommand("synth", "generate a benchmark dataset");
  cmd_synth->add_option("--kind", synth_kind, "dataset family")
      ->required()
      ->check(CLI::IsMember({"gauss4", "ring6"}));
  cmd_synth->add_option("--seed", synth_seed, "generator seed");
  cmd_synth->add_option("--out-train", synth_train, "training CSV")->required();
  cmd_synth->add_option("--out-test", synth_test, "test CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*cmd_train) {
      config.loss = loss_from_name(loss);
      config.reg = reg_from_name(reg);
      config.fast_mode = mode == "fast";
      return run_train(train_data, config, train_out, trace_out);
    }
    if (*cmd_predict) return run_predict(predict_model, predict_data, predict_out);
    if (*cmd_eval) return run_eval(eval_model, eval_data);
    if (*cmd_synth) return run_synth(synth_kind, synth_seed, synth_train, synth_test);
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
