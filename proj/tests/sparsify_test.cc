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

#include "growing_spheres/sparsify.hpp"

#include <random>

#include "growing_spheres/builtin.hpp"
#include "gtest/gtest.h"

namespace gs {
namespace {

const TargetPolicy kAny = TargetPolicy::AnyDifferent();

TEST(Sparsify, TinyDifferenceRevertedFirst) {
  const BuiltinClassifier f(AxisThreshold{0, 0.5}, 2);
  const FeatureVector x{0.9, 0.9};
  const SparsifyResult r = sparsify(f, x, {0.4, 0.900001}, Label(1), kAny);
  EXPECT_EQ(r.enemy, (FeatureVector{0.4, 0.9}));
  EXPECT_EQ(r.enemy_label, Label(-1));
  // e, then (0.4, 0.9); the next reduction is x and is not queried.
  EXPECT_EQ(r.classifier_calls, 2u);
  EXPECT_EQ(r.reductions, 2u);
}

TEST(Sparsify, AlreadySparse) {
  const BuiltinClassifier f(AxisThreshold{0, 0.5}, 2);
  const FeatureVector e{0.4, 0.9};
  const SparsifyResult r = sparsify(f, {0.9, 0.9}, e, Label(1), kAny);
  EXPECT_EQ(r.enemy, e);
  EXPECT_EQ(r.classifier_calls, 1u);
}

TEST(Sparsify, SmallerDifferenceFirstWithMinThreshold) {
  const BuiltinClassifier f(MinThreshold{{0, 1}, 0.5}, 2);
  const FeatureVector x{0.9, 0.9};
  ASSERT_EQ(classify_one(f, x), Label(1));
  const SparsifyResult r = sparsify(f, x, {0.45, 0.40}, Label(1), kAny);
  EXPECT_EQ(r.enemy, (FeatureVector{0.9, 0.40}));
}

TEST(Sparsify, TiesRevertLowestIndexFirst) {
  // Both coordinates move by 0.5; coordinate 0 is reverted first and the
  // result stays an enemy, so coordinate 1 carries the explanation.
  const BuiltinClassifier f(AxisThreshold{1, 0.5}, 2);
  const FeatureVector x{0.75, 0.75};
  const SparsifyResult r = sparsify(f, x, {0.25, 0.25}, Label(1), kAny);
  EXPECT_EQ(r.enemy, (FeatureVector{0.75, 0.25}));
}

TEST(Sparsify, NotAnEnemy) {
  const BuiltinClassifier f(AxisThreshold{0, 0.5}, 2);
  try {
    sparsify(f, {0.9, 0.9}, {0.8, 0.1}, Label(1), kAny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotAnEnemy);
  }
  EXPECT_THROW(sparsify(f, {0.9, 0.9}, {0.1}, Label(1), kAny), Error);
}

TEST(Sparsify, SpecificTarget) {
  const FunctionClassifier f(3, {Label(0), Label(1), Label(2)},
                             [](std::span<const double> v) {
                               if (v[0] < 0.4) return Label(0);
                               if (v[0] < 0.6) return Label(1);
                               return Label(2);
                             });
  const FeatureVector x{0.3, 0.5, 0.5};
  const SparsifyResult r = sparsify(f, x, {0.7, 0.52, 0.45}, Label(0),
                                    TargetPolicy::Specific(Label(2)));
  EXPECT_EQ(r.enemy, (FeatureVector{0.7, 0.5, 0.5}));
  EXPECT_EQ(r.enemy_label, Label(2));
}

// Independent restatement of the loop exit: revert the smallest nonzero
// |difference| (lowest index on ties) once.
FeatureVector revert_smallest(const FeatureVector& x, FeatureVector e) {
  std::size_t pick = x.size();
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (e[j] == x[j]) continue;
    if (pick == x.size() || std::abs(e[j] - x[j]) < std::abs(e[pick] - x[pick])) {
      pick = j;
    }
  }
  e[pick] = x[pick];
  return e;
}

TEST(Sparsify, RandomizedInvariants) {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 2 + trial % 9;
    FeatureVector w(d);
    for (double& v : w) v = normal(gen);
    const BuiltinClassifier f(Hyperplane{w, normal(gen) * 0.3}, d);
    FeatureVector x(d), e(d);
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = unit(gen);
      e[i] = unit(gen) < 0.2 ? x[i] : unit(gen);
    }
    const Label ref = classify_one(f, x);
    if (classify_one(f, e) == ref) continue;
    ++checked;
    const SparsifyResult r = sparsify(f, x, e, ref, kAny);
    EXPECT_NE(classify_one(f, r.enemy), ref);
    const CostBreakdown before = cost(x, e, 1.0), after = cost(x, r.enemy, 1.0);
    EXPECT_LE(after.l0, before.l0);
    EXPECT_LE(after.l2, before.l2);
    EXPECT_LE(after.total, before.total);
    for (std::size_t i = 0; i < d; ++i) {
      if (r.enemy[i] != x[i]) {
        EXPECT_EQ(r.enemy[i], e[i]);
      }
    }
    EXPECT_EQ(classify_one(f, revert_smallest(x, r.enemy)), ref);
    EXPECT_LE(r.classifier_calls, before.l0);
  }
  EXPECT_GT(checked, 100);
}

}  // namespace
}  // namespace gs
