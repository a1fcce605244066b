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

#ifndef GROWING_SPHERES_CLASSIFIER_HPP_
#define GROWING_SPHERES_CLASSIFIER_HPP_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "growing_spheres/core.hpp"
#include "growing_spheres/error.hpp"

namespace gs {

// Opaque decision function f: X -> labels. Only predictions are observable.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual std::size_t dimension() const = 0;
  virtual std::vector<Label> label_set() const = 0;
  // Whether predict() may be called from several threads at once.
  virtual bool concurrent_safe() const = 0;
  // One label per row, in row order.
  virtual std::vector<Label> predict(const PointBatch& batch) const = 0;
};

// Calls f.predict and enforces the one-label-per-row contract.
inline std::vector<Label> classify(const Classifier& f,
                                   const PointBatch& batch) {
  if (batch.dimension() != f.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "classifier expects dimension " +
                    std::to_string(f.dimension()) + ", got " +
                    std::to_string(batch.dimension()));
  }
  std::vector<Label> labels = f.predict(batch);
  if (labels.size() != batch.size()) {
    throw Error(ErrorCode::kClassifierFailure,
                "classifier returned " + std::to_string(labels.size()) +
                    " labels for " + std::to_string(batch.size()) + " points");
  }
  return labels;
}

inline Label classify_one(const Classifier& f, const FeatureVector& v) {
  PointBatch batch(v.size());
  batch.append(v);
  return classify(f, batch).front();
}

// Adapts a per-point callable. Handy for tests and embedding.
class FunctionClassifier final : public Classifier {
 public:
  using Fn = std::function<Label(std::span<const double>)>;

  FunctionClassifier(std::size_t dimension, std::vector<Label> labels, Fn fn,
                     bool concurrent_safe = true)
      : dimension_(dimension),
        labels_(std::move(labels)),
        fn_(std::move(fn)),
        concurrent_safe_(concurrent_safe) {}

  std::size_t dimension() const override { return dimension_; }
  std::vector<Label> label_set() const override { return labels_; }
  bool concurrent_safe() const override { return concurrent_safe_; }

  std::vector<Label> predict(const PointBatch& batch) const override {
    std::vector<Label> out;
    out.reserve(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      out.push_back(fn_(batch.row(i)));
    }
    return out;
  }

 private:
  std::size_t dimension_;
  std::vector<Label> labels_;
  Fn fn_;
  bool concurrent_safe_;
};

}  // namespace gs

#endif  // GROWING_SPHERES_CLASSIFIER_HPP_
