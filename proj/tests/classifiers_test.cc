/*
 * Copyright 2026 The Growing Spheres Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <chrono>
#include <random>
#include <sstream>
#include <vector>

#include "growing_spheres/builtin.hpp"
#include "growing_spheres/explainer.hpp"
#include "growing_spheres/external.hpp"
#include "growing_spheres/io.hpp"
#include "gtest/gtest.h"

namespace gs {
namespace {

using std::chrono::milliseconds;

PointBatch batch_of(std::initializer_list<FeatureVector> rows) {
  PointBatch b(rows.begin()->size());
  for (const auto& r : rows) b.append(r);
  return b;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kIo;
}

TEST(Builtin, Predictions) {
  EXPECT_EQ(BuiltinClassifier(Hyperplane{{1.0, 0.0}, -0.5}, 2)
                .predict(batch_of({{0.9, 0.3}})),
            std::vector<Label>{Label(1)});
  // Boundary points are +1.
  EXPECT_EQ(BuiltinClassifier(AxisThreshold{0, 0.5}, 2)
                .predict(batch_of({{0.5, 0.2}, {0.49, 0.2}})),
            (std::vector<Label>{Label(1), Label(-1)}));
  EXPECT_EQ(BuiltinClassifier(HypersphereBoundary{{0.0, 0.0}, 1.0}, 2)
                .predict(batch_of({{2.0, 0.0}, {0.6, 0.8}})),
            (std::vector<Label>{Label(-1), Label(1)}));
  EXPECT_EQ(BuiltinClassifier(MinThreshold{{0, 2}, 0.5}, 3)
                .predict(batch_of({{0.6, 0.0, 0.7}, {0.6, 0.9, 0.4}})),
            (std::vector<Label>{Label(1), Label(-1)}));
  EXPECT_EQ(BuiltinClassifier(Constant{Label(4)}, 1).predict(batch_of({{0.0}})),
            std::vector<Label>{Label(4)});
}

TEST(Builtin, Validation) {
  EXPECT_EQ(code_of([] { BuiltinClassifier(Hyperplane{{0.0, 0.0}, 1.0}, 2); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { BuiltinClassifier(Hyperplane{{1.0}, 1.0}, 2); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([] { BuiltinClassifier(AxisThreshold{2, 0.5}, 2); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([] {
              BuiltinClassifier(HypersphereBoundary{{0.0, 0.0}, 0.0}, 2);
            }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { BuiltinClassifier(MinThreshold{{}, 0.5}, 2); }),
            ErrorCode::kInvalidArgument);
  const BuiltinClassifier f(AxisThreshold{0, 0.5}, 2);
  EXPECT_EQ(code_of([&] { f.predict(batch_of({{0.1, 0.2, 0.3}})); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_TRUE(f.concurrent_safe());
}

std::vector<std::string> adapter(std::vector<std::string> extra = {}) {
  std::vector<std::string> argv{GS_FAKE_ADAPTER};
  argv.insert(argv.end(), extra.begin(), extra.end());
  return argv;
}

TEST(External, MatchesBuiltinOnExample) {
  ExternalClassifier ext(adapter(), 2);
  EXPECT_FALSE(ext.concurrent_safe());
  EXPECT_EQ(ext.label_set(), (std::vector<Label>{Label(-1), Label(1)}));
  const PointBatch b = batch_of({{0.9, 0.1}, {0.1, 0.9}});
  EXPECT_EQ(ext.predict(b), (std::vector<Label>{Label(1), Label(-1)}));
  EXPECT_EQ(ext.predict(b), BuiltinClassifier(AxisThreshold{0, 0.5}, 2).predict(b));
  EXPECT_EQ(ext.shutdown(), 0);
}

TEST(External, EquivalentToBuiltinOnRandomBatches) {
  ExternalClassifier ext(adapter(), 3);
  const BuiltinClassifier builtin(AxisThreshold{0, 0.5}, 3);
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> size(1, 300);
  for (int trial = 0; trial < 200; ++trial) {
    PointBatch b(3);
    for (int i = size(gen); i > 0; --i) {
      // Include exact boundary values and awkward decimals.
      b.append(FeatureVector{trial % 7 == 0 ? 0.5 : unit(gen), unit(gen) * 1e-7,
                             unit(gen) * 1e9});
    }
    ASSERT_EQ(ext.predict(b), builtin.predict(b));
  }
}

TEST(External, ExplainMatchesBuiltinPath) {
  ExternalClassifier ext(adapter(), 3);
  const BuiltinClassifier builtin(AxisThreshold{0, 0.5}, 3);
  Hyperparameters hp;
  hp.eta = 0.01;
  hp.n_samples = 1000;
  const ScalingModel m = ScalingModel::Identity(3);
  const FeatureVector x{0.8, 0.3, 0.6};
  EXPECT_EQ(explain(ext, x, m, hp, 5), explain(builtin, x, m, hp, 5));
}

TEST(External, LargeBatchesAreChunked) {
  ExternalClassifier ext(adapter(), 1);
  PointBatch b(1);
  for (int i = 0; i < 70000; ++i) b.append(FeatureVector{i % 2 ? 0.9 : 0.1});
  const std::vector<Label> labels = ext.predict(b);
  ASSERT_EQ(labels.size(), 70000u);
  EXPECT_EQ(labels[69999], Label(1));
  EXPECT_EQ(labels[69998], Label(-1));
}

TEST(External, MulticlassLabelSet) {
  ExternalClassifier ext(adapter({"--classes", "3"}), 2);
  EXPECT_EQ(ext.label_set(), (std::vector<Label>{Label(0), Label(1), Label(2)}));
  EXPECT_EQ(ext.predict(batch_of({{0.1, 0.0}, {0.5, 0.0}, {0.9, 0.0}})),
            (std::vector<Label>{Label(0), Label(1), Label(2)}));
}

TEST(External, ShortReplyIsProtocolViolation) {
  ExternalClassifier ext(adapter({"--short"}), 2);
  EXPECT_EQ(code_of([&] { ext.predict(batch_of({{0.9, 0.1}, {0.1, 0.9}})); }),
            ErrorCode::kProtocolViolation);
  // The connection is unusable afterwards.
  EXPECT_EQ(code_of([&] { ext.predict(batch_of({{0.9, 0.1}})); }),
            ErrorCode::kProcessDead);
}

TEST(External, DeadProcess) {
  ExternalClassifier ext(adapter({"--die"}), 2);
  EXPECT_EQ(code_of([&] { ext.predict(batch_of({{0.9, 0.1}})); }),
            ErrorCode::kProcessDead);
}

TEST(External, Timeout) {
  ExternalClassifier ext(adapter({"--hang"}), 2, milliseconds(200));
  EXPECT_EQ(code_of([&] { ext.predict(batch_of({{0.9, 0.1}})); }),
            ErrorCode::kTimeout);
}

TEST(External, HandshakeFailures) {
  EXPECT_EQ(code_of([] { ExternalClassifier(adapter({"--bad-handshake"}), 2); }),
            ErrorCode::kProtocolViolation);
  EXPECT_EQ(code_of([] {
              ExternalClassifier({"/nonexistent/gs-adapter"}, 2, milliseconds(2000));
            }),
            ErrorCode::kProcessDead);
}

TEST(External, FailureSurfacesThroughExplain) {
  ExternalClassifier ext(adapter({"--die"}), 2);
  try {
    explain(ext, {0.9, 0.1}, ScalingModel::Identity(2), Hyperparameters{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.is_classifier_failure());
  }
}

TEST(SelectorGrammar, Builtins) {
  const auto* h = std::get_if<Hyperplane>(
      &BuiltinClassifier(parse_builtin_spec("hyperplane:1,-2.5:0.25"), 2).spec());
  ASSERT_NE(h, nullptr);
  EXPECT_EQ(h->w, (FeatureVector{1.0, -2.5}));
  EXPECT_EQ(h->b, 0.25);

  const auto a = std::get<AxisThreshold>(parse_builtin_spec("axis:3:0.5"));
  EXPECT_EQ(a.index, 3u);
  EXPECT_EQ(a.threshold, 0.5);

  const auto s = std::get<HypersphereBoundary>(parse_builtin_spec("sphere:0,0,1:2"));
  EXPECT_EQ(s.center, (FeatureVector{0.0, 0.0, 1.0}));
  EXPECT_EQ(s.radius, 2.0);

  const auto mt = std::get<MinThreshold>(parse_builtin_spec("min:0,2:0.5"));
  EXPECT_EQ(mt.indices, (std::vector<std::size_t>{0, 2}));

  EXPECT_EQ(std::get<Constant>(parse_builtin_spec("const:-1")).label, Label(-1));

  for (const char* bad : {"axis:0", "axis:x:0.5", "cube:1", "const:a",
                          "hyperplane:1,,2:0"}) {
    EXPECT_EQ(code_of([&] { parse_builtin_spec(bad); }),
              ErrorCode::kInvalidArgument)
        << bad;
  }
}

TEST(SelectorGrammar, MakeClassifier) {
  EXPECT_TRUE(make_classifier("builtin:axis:0:0.5", 2)->concurrent_safe());
  auto ext = make_classifier(std::string("exec:") + GS_FAKE_ADAPTER + " --classes 4", 2);
  EXPECT_EQ(ext->label_set().size(), 4u);
  EXPECT_EQ(code_of([] { make_classifier("python:model.pkl", 2); }),
            ErrorCode::kInvalidArgument);
}

TEST(Csv, ReadsHeaderAndRows) {
  std::istringstream in("a, b ,label\n1,2,0\n\n3.5,-4e2,1\n");
  const Dataset all = read_csv(in);
  EXPECT_EQ(all.feature_names, (std::vector<std::string>{"a", "b", "label"}));
  ASSERT_EQ(all.rows.size(), 2u);

  std::istringstream again("a, b ,label\n1,2,0\n\n3.5,-4e2,1\n");
  const Dataset d = read_csv(again, std::string("label"));
  EXPECT_EQ(d.feature_names, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(d.rows[1], (FeatureVector{3.5, -400.0}));
}

TEST(Csv, Errors) {
  std::istringstream ragged("a,b\n1\n");
  EXPECT_EQ(code_of([&] { read_csv(ragged); }), ErrorCode::kDimensionMismatch);
  std::istringstream text("a,b\n1,x\n");
  EXPECT_EQ(code_of([&] { read_csv(text); }), ErrorCode::kNonFinite);
  std::istringstream empty("");
  EXPECT_EQ(code_of([&] { read_csv(empty); }), ErrorCode::kEmptyDataset);
  std::istringstream nolabel("a,b\n1,2\n");
  EXPECT_EQ(code_of([&] { read_csv(nolabel, std::string("y")); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { read_csv_file("/nonexistent/data.csv"); }),
            ErrorCode::kIo);
}

TEST(Format, ShortestRoundTrip) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> wide(-1e6, 1e6);
  for (int i = 0; i < 10000; ++i) {
    const double v = i % 3 ? wide(gen) : wide(gen) * 1e-300;
    EXPECT_EQ(parse_double(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_FALSE(parse_double("1.0x"));
  EXPECT_FALSE(parse_double(""));
}

}  // namespace
}  // namespace gs
