#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>

#include "doctest.h"
#include "mcboost/booster.hpp"
#include "mcboost/io.hpp"
#include "mcboost/synth_data.hpp"

using namespace mcboost;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content = "")
      : path("iotest_" + name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("csv datasets load with and without a header") {
  TempFile plain("plain.csv", "2,0.5,-1\n1,2,0\n");
  const Dataset d = load_dataset(plain.path, DataFormat::Csv);
  CHECK(d.m() == 2);
  CHECK(d.dims() == 2);
  CHECK(d.num_classes == 2);
  CHECK(d.labels == std::vector<int>{1, 0});  // on-disk labels are 1-based
  CHECK(d.x(0, 0) == doctest::Approx(0.5));
  CHECK(d.x(0, 1) == doctest::Approx(-1.0));
  CHECK(d.x(1, 0) == doctest::Approx(2.0));

  TempFile headed("headed.csv", "label,a,b\n2,0.5,-1\n1,2,0\n");
  const Dataset h = load_dataset(headed.path, DataFormat::Csv, /*csv_header=*/true);
  CHECK(h.labels == d.labels);
  CHECK((h.x - d.x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sparse rows expand to dense features") {
  TempFile sparse("basic.sparse", "2 1:0.5 3:-1\n1 2:2\n");
  const Dataset d = load_dataset(sparse.path, DataFormat::Sparse);
  CHECK(d.m() == 2);
  CHECK(d.dims() == 3);
  CHECK(d.num_classes == 2);
  MatrixXd want(2, 3);
  want << 0.5, 0.0, -1.0, 0.0, 2.0, 0.0;
  CHECK((d.x - want).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("both encodings of the same data load identically") {
  const SynthPair pair = generate({SynthKind::Gauss4, 4, 0.5});
  TempFile csv("same.csv");
  save_dataset_csv(csv.path, pair.train);
  const Dataset via_csv = load_dataset(csv.path, DataFormat::Csv);

  std::string sparse_text;
  for (Eigen::Index i = 0; i < via_csv.m(); ++i) {
    sparse_text += std::to_string(via_csv.labels[static_cast<size_t>(i)] + 1);
    for (Eigen::Index j = 0; j < via_csv.dims(); ++j) {
      char cell[64];
      std::snprintf(cell, sizeof cell, " %ld:%.17g", static_cast<long>(j + 1),
                    via_csv.x(i, j));
      sparse_text += cell;
    }
    sparse_text += "\n";
  }
  TempFile sparse("same.sparse", sparse_text);
  const Dataset via_sparse = load_dataset(sparse.path, DataFormat::Sparse);
  CHECK(via_sparse.labels == via_csv.labels);
  CHECK((via_sparse.x - via_csv.x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("malformed content names the offending line") {
  TempFile bad("bad.csv", "1,0.5\n2,oops\n");
  try {
    load_dataset(bad.path, DataFormat::Csv);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  TempFile empty("empty.csv", "");
  CHECK_THROWS_AS(load_dataset(empty.path, DataFormat::Csv), ParseError);

  TempFile zero("zero.csv", "0,1.0\n");
  CHECK_THROWS_AS(load_dataset(zero.path, DataFormat::Csv), ParseError);

  TempFile dup("dup.sparse", "1 1:1 1:2\n");
  try {
    load_dataset(dup.path, DataFormat::Sparse);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }

  TempFile ragged("ragged.csv", "1,1.0,2.0\n2,1.0\n");
  CHECK_THROWS_AS(load_dataset(ragged.path, DataFormat::Csv), ParseError);
}

TEST_CASE("models survive a save and load bit for bit") {
  const SynthPair pair = generate({SynthKind::Gauss4, 6, 0.5});
  TrainConfig cfg;
  cfg.loss = LossKind::Hinge;
  cfg.reg = RegKind::L1;
  cfg.nu = 0.4;
  cfg.max_stumps = 6;
  const TrainResult r = train(pair.train, cfg);

  TempFile file("model.txt");
  save_model(file.path, r.model, cfg);
  const EnsembleModel loaded = load_model(file.path);
  REQUIRE(loaded.size() == r.model.size());
  CHECK(loaded.num_classes == r.model.num_classes);
  CHECK((loaded.weights - r.model.weights).cwiseAbs().maxCoeff() == 0.0);
  for (Eigen::Index j = 0; j < loaded.size(); ++j) {
    CHECK(loaded.stumps[static_cast<size_t>(j)].feature ==
          r.model.stumps[static_cast<size_t>(j)].feature);
    CHECK(loaded.stumps[static_cast<size_t>(j)].threshold ==
          r.model.stumps[static_cast<size_t>(j)].threshold);
    CHECK(loaded.stumps[static_cast<size_t>(j)].polarity ==
          r.model.stumps[static_cast<size_t>(j)].polarity);
  }
  CHECK(predict(loaded, pair.test.x) == predict(r.model, pair.test.x));
}

TEST_CASE("unknown model versions are rejected") {
  TempFile file("future.txt", "mcboost-model 2\nclasses 2\nstumps 0\n");
  CHECK_THROWS_AS(load_model(file.path), ParseError);
}

TEST_CASE("traces round trip exactly") {
  std::vector<TraceRow> trace(2);
  trace[0].iteration = 1;
  trace[0].stump = {3, 0.125, -1};
  trace[0].cls = 2;
  trace[0].edge = 0.75;
  trace[0].stopping_margin = 0.5;
  trace[0].objective = 1.25;
  trace[0].train_error = 0.0625;
  trace[0].test_error = 0.125;
  trace[1].iteration = 2;
  trace[1].stump = {0, -2.5, 1};
  trace[1].cls = 0;
  trace[1].edge = 0.1234567890123456789;
  trace[1].stopping_margin = 0.1;
  trace[1].objective = 1.0;
  trace[1].train_error = 0.0;
  trace[1].test_error = std::numeric_limits<double>::quiet_NaN();

  TempFile file("trace.txt");
  save_trace(file.path, trace);
  const std::vector<TraceRow> loaded = load_trace(file.path);
  REQUIRE(loaded.size() == 2);
  for (size_t i = 0; i < 2; ++i) {
    CHECK(loaded[i].iteration == trace[i].iteration);
    CHECK(loaded[i].stump.feature == trace[i].stump.feature);
    CHECK(loaded[i].stump.threshold == trace[i].stump.threshold);
    CHECK(loaded[i].stump.polarity == trace[i].stump.polarity);
    CHECK(loaded[i].cls == trace[i].cls);
    CHECK(loaded[i].edge == trace[i].edge);
    CHECK(loaded[i].stopping_margin == trace[i].stopping_margin);
    CHECK(loaded[i].objective == trace[i].objective);
    CHECK(loaded[i].train_error == trace[i].train_error);
  }
  CHECK(loaded[0].test_error == trace[0].test_error);
  CHECK(std::isnan(loaded[1].test_error));
}

TEST_CASE("predictions are written one-based") {
  TempFile file("preds.txt");
  save_predictions(file.path, {0, 2, 1});
  std::ifstream in(file.path);
  int a, b, c;
  in >> a >> b >> c;
  CHECK(a == 1);
  CHECK(b == 3);
  CHECK(c == 2);
}

TEST_CASE("name maps cover every kind") {
  CHECK(loss_from_name("hinge") == LossKind::Hinge);
  CHECK(loss_from_name("exp") == LossKind::Exponential);
  CHECK(loss_from_name("logistic") == LossKind::Logistic);
  CHECK(reg_from_name("l1") == RegKind::L1);
  CHECK(reg_from_name("l12") == RegKind::L12);
  CHECK(reg_from_name("l1inf") == RegKind::L1Inf);
  CHECK(std::string(loss_name(LossKind::Exponential)) == "exp");
  CHECK(std::string(reg_name(RegKind::L1Inf)) == "l1inf");
  CHECK_THROWS_AS(loss_from_name("none"), InputError);
  CHECK_THROWS_AS(reg_from_name("none"), InputError);
}
