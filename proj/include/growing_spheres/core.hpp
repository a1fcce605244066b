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

// Value types shared by the whole engine: points, labels, the search
// configuration and the cost of moving from an observation to an enemy.

#ifndef GROWING_SPHERES_CORE_HPP_
#define GROWING_SPHERES_CORE_HPP_

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "growing_spheres/error.hpp"

namespace gs {

// A point of the input space, in scaled feature units.
class FeatureVector {
 public:
  FeatureVector() = default;
  explicit FeatureVector(std::size_t dimension, double fill = 0.0)
      : values_(dimension, fill) {}
  explicit FeatureVector(std::vector<double> values)
      : values_(std::move(values)) {}
  explicit FeatureVector(std::span<const double> values)
      : values_(values.begin(), values.end()) {}
  FeatureVector(std::initializer_list<double> values) : values_(values) {}

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }
  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }

  bool all_finite() const noexcept {
    for (double v : values_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::vector<double> values_;
};

// Row-major block of points sharing one dimension. Classifiers consume whole
// batches so that a layer of the search costs one black-box round trip.
class PointBatch {
 public:
  PointBatch() = default;
  explicit PointBatch(std::size_t dimension) : dimension_(dimension) {}

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept {
    return dimension_ == 0 ? 0 : data_.size() / dimension_;
  }
  bool empty() const noexcept { return data_.empty(); }

  void reserve(std::size_t rows) { data_.reserve(rows * dimension_); }
  void clear() noexcept { data_.clear(); }

  void append(std::span<const double> row) {
    if (row.size() != dimension_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "batch row has " + std::to_string(row.size()) +
                      " values, expected " + std::to_string(dimension_));
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
  void append(const FeatureVector& row) { append(row.values()); }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * dimension_, dimension_};
  }
  std::span<double> row(std::size_t i) {
    return {data_.data() + i * dimension_, dimension_};
  }
  FeatureVector point(std::size_t i) const { return FeatureVector(row(i)); }

  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const PointBatch&, const PointBatch&) = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<double> data_;
};

// Class identifier. Binary problems use {-1, 1}; multiclass uses 0..k-1.
class Label {
 public:
  constexpr Label() = default;
  constexpr explicit Label(int value) : value_(value) {}
  constexpr int value() const noexcept { return value_; }
  friend constexpr auto operator<=>(Label, Label) = default;

 private:
  int value_ = 0;
};

// Which labels count as an enemy of the explained observation.
class TargetPolicy {
 public:
  static TargetPolicy AnyDifferent() { return TargetPolicy(); }
  static TargetPolicy Specific(Label label) { return TargetPolicy(label); }

  bool any_different() const noexcept { return !target_.has_value(); }
  const std::optional<Label>& target() const noexcept { return target_; }

  friend bool operator==(const TargetPolicy&, const TargetPolicy&) = default;

 private:
  TargetPolicy() = default;
  explicit TargetPolicy(Label label) : target_(label) {}
  std::optional<Label> target_;
};

// True when `label` is an enemy of `reference` under `target`.
inline bool is_enemy(Label label, Label reference, const TargetPolicy& target) {
  if (target.any_different()) return label != reference;
  const Label wanted = *target.target();
  if (wanted == reference) {
    throw Error(ErrorCode::kInvalidTarget,
                "target label " + std::to_string(wanted.value()) +
                    " equals the label of the explained observation");
  }
  return label == wanted;
}

enum class SamplingMode {
  // Radius drawn uniformly in [a0, a1].
  kPaperRadiusUniform,
  // Radius drawn so that points are uniform over the layer volume.
  kVolumeUniform,
};

struct Hyperparameters {
  static constexpr double kDefaultEta = 0.001;
  static constexpr std::size_t kDefaultSamples = 10000;
  static constexpr double kDefaultGamma = 1.0;
  static constexpr double kDefaultEtaFloor = 1e-10;
  static constexpr std::uint64_t kDefaultSeed = 42;

  double eta = kDefaultEta;
  std::size_t n_samples = kDefaultSamples;
  double gamma = kDefaultGamma;
  // Unset means 2 * sqrt(d), twice the diagonal of the scaled unit box.
  std::optional<double> radius_cap;
  double eta_floor = kDefaultEtaFloor;
  SamplingMode sampling_mode = SamplingMode::kPaperRadiusUniform;
  std::uint64_t seed = kDefaultSeed;
  TargetPolicy target = TargetPolicy::AnyDifferent();
  bool clamp_to_unit_box = false;

  double resolved_radius_cap(std::size_t dimension) const {
    return radius_cap.value_or(2.0 * std::sqrt(static_cast<double>(dimension)));
  }

  void validate(std::size_t dimension) const {
    auto fail = [](const std::string& what) {
      throw Error(ErrorCode::kInvalidHyperparameters, what);
    };
    if (!(eta > 0.0) || !std::isfinite(eta)) fail("eta must be positive");
    if (n_samples < 1) fail("n_samples must be at least 1");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
      fail("gamma must be nonnegative");
    }
    if (!(eta_floor > 0.0)) fail("eta_floor must be positive");
    if (!(resolved_radius_cap(dimension) > eta)) {
      fail("radius_cap must exceed eta");
    }
  }
};

struct CostBreakdown {
  double l2 = 0.0;
  std::size_t l0 = 0;
  double total = 0.0;

  friend bool operator==(const CostBreakdown&, const CostBreakdown&) = default;
};

struct SearchDiagnostics {
  std::uint64_t classifier_calls = 0;
  std::uint64_t halvings = 0;
  std::uint64_t layers_explored = 0;
  std::pair<double, double> final_layer{0.0, 0.0};
  std::uint64_t seed_used = 0;
  std::uint64_t stream_used = 0;

  friend bool operator==(const SearchDiagnostics&,
                         const SearchDiagnostics&) = default;
};

struct Explanation {
  FeatureVector x;
  FeatureVector enemy_raw;
  FeatureVector enemy_final;
  FeatureVector move;
  FeatureVector move_original_units;
  Label label_x;
  Label label_enemy;
  CostBreakdown cost_raw;
  CostBreakdown cost_final;
  SearchDiagnostics diagnostics;

  friend bool operator==(const Explanation&, const Explanation&) = default;
};

namespace internal {

inline void check_same_dimension(std::span<const double> a,
                                 std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

inline void check_finite(std::span<const double> v, const char* what) {
  for (double value : v) {
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::kNonFinite, std::string(what) +
                                             " contains a non-finite value");
    }
  }
}

}  // namespace internal

// Euclidean distance; dimensions are assumed equal.
inline double l2_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

// Number of coordinates that differ (strict inequality, no tolerance).
inline std::size_t l0_distance(std::span<const double> a,
                               std::span<const double> b) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) ++count;
  }
  return count;
}

// c(x, e) = ||x - e||_2 + gamma * ||x - e||_0.
inline CostBreakdown cost(const FeatureVector& x, const FeatureVector& e,
                          double gamma) {
  internal::check_same_dimension(x.values(), e.values());
  internal::check_finite(x.values(), "x");
  internal::check_finite(e.values(), "e");
  CostBreakdown out;
  out.l2 = l2_distance(x.values(), e.values());
  out.l0 = l0_distance(x.values(), e.values());
  out.total = out.l2 + gamma * static_cast<double>(out.l0);
  return out;
}

}  // namespace gs

#endif  // GROWING_SPHERES_CORE_HPP_
