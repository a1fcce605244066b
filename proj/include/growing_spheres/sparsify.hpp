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

#ifndef GROWING_SPHERES_SPARSIFY_HPP_
#define GROWING_SPHERES_SPARSIFY_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "growing_spheres/classifier.hpp"
#include "growing_spheres/core.hpp"
#include "growing_spheres/error.hpp"

namespace gs {

struct SparsifyResult {
  FeatureVector enemy;  // e*
  Label enemy_label;
  // Black-box evaluations, including the check of the input enemy. The
  // reduction that lands on x itself is never sent to the classifier.
  std::uint64_t classifier_calls = 0;
  std::uint64_t reductions = 0;  // coordinates reverted to x
};

// Index of the differing coordinate with the smallest |e[j] - x[j]|, lowest
// index on ties; nullopt when e == x.
inline std::optional<std::size_t> smallest_difference(const FeatureVector& x,
                                                      const FeatureVector& e) {
  std::optional<std::size_t> best;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (e[j] == x[j]) continue;
    const double gap = std::abs(e[j] - x[j]);
    if (gap < best_gap) {
      best_gap = gap;
      best = j;
    }
  }
  return best;
}

// Greedily reverts coordinates of the enemy e back to x, smallest difference
// first, for as long as the result stays an enemy of `reference`.
inline SparsifyResult sparsify(const Classifier& f, const FeatureVector& x,
                               const FeatureVector& e, Label reference,
                               const TargetPolicy& target) {
  internal::check_same_dimension(x.values(), e.values());
  if (x.size() != f.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "classifier expects dimension " +
                    std::to_string(f.dimension()));
  }
  internal::check_finite(x.values(), "x");
  internal::check_finite(e.values(), "e");

  SparsifyResult out;
  Label label = classify_one(f, e);
  ++out.classifier_calls;
  if (!is_enemy(label, reference, target)) {
    throw Error(ErrorCode::kNotAnEnemy,
                "input point is classified " + std::to_string(label.value()) +
                    ", not an enemy of " + std::to_string(reference.value()));
  }

  FeatureVector candidate = e;
  while (true) {
    out.enemy = candidate;
    out.enemy_label = label;
    const std::optional<std::size_t> i = smallest_difference(x, candidate);
    if (!i) break;  // only reachable if e == x, excluded above
    candidate[*i] = x[*i];
    ++out.reductions;
    if (candidate == x) break;  // f(x) = reference is never an enemy
    label = classify_one(f, candidate);
    ++out.classifier_calls;
    if (!is_enemy(label, reference, target)) break;
  }
  return out;
}

}  // namespace gs

#endif  // GROWING_SPHERES_SPARSIFY_HPP_
