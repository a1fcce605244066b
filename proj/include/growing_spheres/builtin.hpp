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

// Synthetic classifiers whose decision boundaries are known in closed form.
// Points exactly on a boundary are labeled +1.

#ifndef GROWING_SPHERES_BUILTIN_HPP_
#define GROWING_SPHERES_BUILTIN_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "growing_spheres/classifier.hpp"
#include "growing_spheres/core.hpp"
#include "growing_spheres/error.hpp"

namespace gs {

// sign(w.v + b)
struct Hyperplane {
  FeatureVector w;
  double b = 0.0;
};

// sign(v[index] - threshold)
struct AxisThreshold {
  std::size_t index = 0;
  double threshold = 0.0;
};

// +1 inside the closed ball, -1 outside.
struct HypersphereBoundary {
  FeatureVector center;
  double radius = 1.0;
};

// +1 iff min over indices of v[i] >= threshold.
struct MinThreshold {
  std::vector<std::size_t> indices;
  double threshold = 0.0;
};

struct Constant {
  Label label{1};
};

using BuiltinSpec = std::variant<Hyperplane, AxisThreshold,
                                 HypersphereBoundary, MinThreshold, Constant>;

class BuiltinClassifier final : public Classifier {
 public:
  BuiltinClassifier(BuiltinSpec spec, std::size_t dimension)
      : spec_(std::move(spec)), dimension_(dimension) {
    if (dimension_ == 0) {
      throw Error(ErrorCode::kInvalidDimension, "classifier of dimension 0");
    }
    std::visit([this](const auto& s) { validate(s); }, spec_);
  }

  const BuiltinSpec& spec() const noexcept { return spec_; }

  std::size_t dimension() const override { return dimension_; }

  std::vector<Label> label_set() const override {
    if (const auto* c = std::get_if<Constant>(&spec_)) {
      if (c->label != Label(-1) && c->label != Label(1)) return {c->label};
    }
    return {Label(-1), Label(1)};
  }

  bool concurrent_safe() const override { return true; }

  std::vector<Label> predict(const PointBatch& batch) const override {
    if (batch.dimension() != dimension_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "builtin classifier expects dimension " +
                      std::to_string(dimension_));
    }
    std::vector<Label> out;
    out.reserve(batch.size());
    std::visit(
        [&](const auto& s) {
          for (std::size_t i = 0; i < batch.size(); ++i) {
            out.push_back(label_of(s, batch.row(i)));
          }
        },
        spec_);
    return out;
  }

 private:
  static Label sign(bool non_negative) {
    return non_negative ? Label(1) : Label(-1);
  }

  static Label label_of(const Hyperplane& s, std::span<const double> v) {
    double dot = s.b;
    for (std::size_t i = 0; i < v.size(); ++i) dot += s.w[i] * v[i];
    return sign(dot >= 0.0);
  }
  static Label label_of(const AxisThreshold& s, std::span<const double> v) {
    return sign(v[s.index] - s.threshold >= 0.0);
  }
  static Label label_of(const HypersphereBoundary& s,
                        std::span<const double> v) {
    return sign(l2_distance(v, s.center.values()) <= s.radius);
  }
  static Label label_of(const MinThreshold& s, std::span<const double> v) {
    double lowest = v[s.indices.front()];
    for (std::size_t i : s.indices) lowest = std::min(lowest, v[i]);
    return sign(lowest >= s.threshold);
  }
  static Label label_of(const Constant& s, std::span<const double>) {
    return s.label;
  }

  void require_dimension(const FeatureVector& v, const char* what) const {
    if (v.size() != dimension_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  std::string(what) + " has " + std::to_string(v.size()) +
                      " entries, classifier dimension is " +
                      std::to_string(dimension_));
    }
  }
  void require_index(std::size_t i) const {
    if (i >= dimension_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "feature index " + std::to_string(i) + " out of range");
    }
  }

  void validate(const Hyperplane& s) const {
    require_dimension(s.w, "hyperplane normal");
    if (std::all_of(s.w.begin(), s.w.end(), [](double v) { return v == 0; })) {
      throw Error(ErrorCode::kInvalidArgument, "hyperplane normal is zero");
    }
  }
  void validate(const AxisThreshold& s) const { require_index(s.index); }
  void validate(const HypersphereBoundary& s) const {
    require_dimension(s.center, "sphere center");
    if (!(s.radius > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "sphere radius must be > 0");
    }
  }
  void validate(const MinThreshold& s) const {
    if (s.indices.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "min threshold without indices");
    }
    for (std::size_t i : s.indices) require_index(i);
  }
  void validate(const Constant&) const {}

  BuiltinSpec spec_;
  std::size_t dimension_;
};

}  // namespace gs

#endif  // GROWING_SPHERES_BUILTIN_HPP_
