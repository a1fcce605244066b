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

#include "growing_spheres/core.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "gtest/gtest.h"

namespace gs {
namespace {

TEST(Cost, IdentityIsZero) {
  const FeatureVector x{0.2, 0.7};
  EXPECT_EQ(cost(x, x, 1.0), (CostBreakdown{0.0, 0, 0.0}));
}

TEST(Cost, SingleCoordinate) {
  const CostBreakdown c = cost({0.0, 0.0}, {0.3, 0.0}, 1.0);
  EXPECT_DOUBLE_EQ(c.l2, 0.3);
  EXPECT_EQ(c.l0, 1u);
  EXPECT_DOUBLE_EQ(c.total, 1.3);
}

TEST(Cost, ThreeFourFive) {
  const CostBreakdown c = cost({0.0, 0.0}, {0.3, 0.4}, 2.0);
  EXPECT_NEAR(c.l2, 0.5, 1e-15);
  EXPECT_EQ(c.l0, 2u);
  EXPECT_NEAR(c.total, 4.5, 1e-15);
}

TEST(Cost, ZeroNormFromTinyDifference) {
  // l0 has no tolerance band.
  const CostBreakdown c = cost({0.5}, {std::nextafter(0.5, 1.0)}, 1.0);
  EXPECT_EQ(c.l0, 1u);
}

TEST(Cost, Errors) {
  try {
    cost({0.0}, {0.0, 1.0}, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
  try {
    cost({std::numeric_limits<double>::quiet_NaN()}, {0.0}, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
  }
  try {
    cost({0.0}, {std::numeric_limits<double>::infinity()}, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
  }
}

// Symmetry, total = l2 + gamma * l0, and monotonicity when coordinates of
// the difference are zeroed.
TEST(Cost, RandomizedProperties) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> dim(1, 12);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = dim(gen);
    FeatureVector x(d), e(d);
    for (int i = 0; i < d; ++i) {
      x[i] = unit(gen);
      e[i] = unit(gen) < 0.3 ? x[i] : unit(gen);
    }
    const double gamma = 3.0 * unit(gen);
    const CostBreakdown c = cost(x, e, gamma);
    EXPECT_EQ(c, cost(e, x, gamma));
    EXPECT_EQ(c.total, c.l2 + gamma * static_cast<double>(c.l0));
    EXPECT_LE(c.l0, static_cast<std::size_t>(d));
    EXPECT_EQ(c.l2 == 0.0, c.l0 == 0u);
    EXPECT_EQ(cost(x, x, gamma).total, 0.0);

    FeatureVector projected = e;
    for (int i = 0; i < d; ++i) {
      if (unit(gen) < 0.5) projected[i] = x[i];
    }
    const CostBreakdown p = cost(x, projected, gamma);
    EXPECT_LE(p.l2, c.l2);
    EXPECT_LE(p.l0, c.l0);
    EXPECT_LE(p.total, c.total);
  }
}

TEST(IsEnemy, AnyDifferent) {
  const TargetPolicy any = TargetPolicy::AnyDifferent();
  EXPECT_TRUE(is_enemy(Label(-1), Label(1), any));
  EXPECT_FALSE(is_enemy(Label(1), Label(1), any));
  for (int l = -2; l <= 3; ++l) {
    for (int r = -2; r <= 3; ++r) {
      EXPECT_EQ(is_enemy(Label(l), Label(r), any), l != r);
    }
  }
}

TEST(IsEnemy, SpecificTarget) {
  EXPECT_FALSE(is_enemy(Label(2), Label(0), TargetPolicy::Specific(Label(3))));
  EXPECT_TRUE(is_enemy(Label(3), Label(0), TargetPolicy::Specific(Label(3))));
  try {
    is_enemy(Label(1), Label(1), TargetPolicy::Specific(Label(1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidTarget);
  }
}

TEST(Hyperparameters, Defaults) {
  const Hyperparameters hp;
  EXPECT_EQ(hp.eta, 0.001);
  EXPECT_EQ(hp.n_samples, 10000u);
  EXPECT_EQ(hp.gamma, 1.0);
  EXPECT_EQ(hp.eta_floor, 1e-10);
  EXPECT_EQ(hp.sampling_mode, SamplingMode::kPaperRadiusUniform);
  EXPECT_TRUE(hp.target.any_different());
  EXPECT_FALSE(hp.clamp_to_unit_box);
  EXPECT_DOUBLE_EQ(hp.resolved_radius_cap(4), 4.0);
}

TEST(Hyperparameters, Validation) {
  auto rejects = [](Hyperparameters hp) {
    try {
      hp.validate(4);
    } catch (const Error& e) {
      return e.code() == ErrorCode::kInvalidHyperparameters;
    }
    return false;
  };
  Hyperparameters hp;
  EXPECT_NO_THROW(hp.validate(4));
  hp.eta = 0.0;
  EXPECT_TRUE(rejects(hp));
  hp = {};
  hp.n_samples = 0;
  EXPECT_TRUE(rejects(hp));
  hp = {};
  hp.gamma = -1.0;
  EXPECT_TRUE(rejects(hp));
  hp = {};
  hp.eta_floor = 0.0;
  EXPECT_TRUE(rejects(hp));
  hp = {};
  hp.radius_cap = hp.eta;
  EXPECT_TRUE(rejects(hp));
}

TEST(PointBatch, RowsAreContiguous) {
  PointBatch b(2);
  b.append(FeatureVector{1.0, 2.0});
  b.append(FeatureVector{3.0, 4.0});
  EXPECT_EQ(b.size(), 2u);
  EXPECT_EQ(b.point(1), (FeatureVector{3.0, 4.0}));
  EXPECT_THROW(b.append(FeatureVector{1.0}), Error);
}

}  // namespace
}  // namespace gs
