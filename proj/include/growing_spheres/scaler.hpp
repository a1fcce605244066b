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

#ifndef GROWING_SPHERES_SCALER_HPP_
#define GROWING_SPHERES_SCALER_HPP_

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "growing_spheres/core.hpp"
#include "growing_spheres/error.hpp"

namespace gs {

// Per-feature min-max scaling into [0, 1]. Constant columns get a range of 1
// so that they map to 0 and remain perturbable.
class ScalingModel {
 public:
  static ScalingModel Fit(std::span<const FeatureVector> rows) {
    if (rows.empty()) {
      throw Error(ErrorCode::kEmptyDataset, "cannot fit scaling on zero rows");
    }
    const std::size_t d = rows.front().size();
    if (d == 0) throw Error(ErrorCode::kInvalidDimension, "zero features");
    std::vector<double> lo(rows.front().begin(), rows.front().end());
    std::vector<double> hi = lo;
    for (const FeatureVector& row : rows) {
      if (row.size() != d) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "row has " + std::to_string(row.size()) +
                        " features, expected " + std::to_string(d));
      }
      internal::check_finite(row.values(), "row");
      for (std::size_t i = 0; i < d; ++i) {
        lo[i] = std::min(lo[i], row[i]);
        hi[i] = std::max(hi[i], row[i]);
      }
    }
    std::vector<double> ranges(d);
    for (std::size_t i = 0; i < d; ++i) {
      ranges[i] = hi[i] > lo[i] ? hi[i] - lo[i] : 1.0;
    }
    return ScalingModel(std::move(lo), std::move(ranges));
  }

  // Scaled units equal original units.
  static ScalingModel Identity(std::size_t dimension) {
    return ScalingModel(std::vector<double>(dimension, 0.0),
                        std::vector<double>(dimension, 1.0));
  }

  std::size_t dimension() const noexcept { return mins_.size(); }
  std::span<const double> mins() const noexcept { return mins_; }
  std::span<const double> ranges() const noexcept { return ranges_; }

  FeatureVector apply(const FeatureVector& v) const {
    check(v);
    FeatureVector out(dimension());
    for (std::size_t i = 0; i < dimension(); ++i) {
      out[i] = (v[i] - mins_[i]) / ranges_[i];
    }
    return out;
  }

  // Inverse of apply() for points.
  FeatureVector invert(const FeatureVector& scaled) const {
    check(scaled);
    FeatureVector out(dimension());
    for (std::size_t i = 0; i < dimension(); ++i) {
      out[i] = scaled[i] * ranges_[i] + mins_[i];
    }
    return out;
  }

  // Difference vectors are shift invariant, so only the range applies.
  FeatureVector invert_move(const FeatureVector& move_scaled) const {
    check(move_scaled);
    FeatureVector out(dimension());
    for (std::size_t i = 0; i < dimension(); ++i) {
      out[i] = move_scaled[i] * ranges_[i];
    }
    return out;
  }

 private:
  ScalingModel(std::vector<double> mins, std::vector<double> ranges)
      : mins_(std::move(mins)), ranges_(std::move(ranges)) {}

  void check(const FeatureVector& v) const {
    if (v.size() != dimension()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "vector has " + std::to_string(v.size()) +
                      " features, scaling model has " +
                      std::to_string(dimension()));
    }
  }

  std::vector<double> mins_;
  std::vector<double> ranges_;
};

}  // namespace gs

#endif  // GROWING_SPHERES_SCALER_HPP_
