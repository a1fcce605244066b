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

// Growing Spheres generation: find the l2-closest enemy of x by sampling
// spherical layers of increasing radius around it.
//
// Phase A samples the ball SL(x, 0, eta) and halves eta until the ball holds
// no enemy. Phase B then samples SL(x, eta, 2 eta), SL(x, 2 eta, 3 eta), ...
// until a layer holds one. The returned enemy is the closest one among every
// point classified during the call.

#ifndef GROWING_SPHERES_SEARCH_HPP_
#define GROWING_SPHERES_SEARCH_HPP_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "growing_spheres/classifier.hpp"
#include "growing_spheres/core.hpp"
#include "growing_spheres/error.hpp"
#include "growing_spheres/random.hpp"
#include "growing_spheres/sampler.hpp"

namespace gs {

enum class SearchPhase { kInitialBall, kLayer };

// One classified batch, reported to an optional observer.
struct LayerEvent {
  SearchPhase phase;
  double a0;
  double a1;
  const PointBatch& points;
  std::span<const Label> labels;
  std::size_t enemies;
};

using SearchObserver = std::function<void(const LayerEvent&)>;

struct GenerationResult {
  FeatureVector enemy;
  Label enemy_label;
  double distance = 0.0;
  SearchDiagnostics diagnostics;
};

// `reference` must be f(x). classifier_calls counts the points classified
// here and excludes the evaluation of f(x).
inline GenerationResult generate_enemy(const Classifier& f,
                                       const FeatureVector& x, Label reference,
                                       const Hyperparameters& hp,
                                       RandomSource& rng,
                                       const SearchObserver& observer = {}) {
  const std::size_t d = x.size();
  if (d == 0) throw Error(ErrorCode::kInvalidDimension, "empty observation");
  if (d != f.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "observation has " + std::to_string(d) +
                    " features, classifier expects " +
                    std::to_string(f.dimension()));
  }
  internal::check_finite(x.values(), "observation");
  hp.validate(d);
  if (hp.target.target() && *hp.target.target() == reference) {
    throw Error(ErrorCode::kInvalidTarget,
                "target label equals the label of the observation");
  }
  const double radius_cap = hp.resolved_radius_cap(d);

  GenerationResult result;
  result.diagnostics.seed_used = rng.seed();
  result.diagnostics.stream_used = rng.stream();
  double best_distance = std::numeric_limits<double>::infinity();
  bool found = false;

  PointBatch batch(d);
  LayerSpec layer{x, 0.0, 0.0};

  // Samples and classifies one layer, returning its number of enemies.
  auto explore = [&](SearchPhase phase, double a0, double a1) {
    layer.a0 = a0;
    layer.a1 = a1;
    batch.clear();
    sample_layer_into(layer, hp.n_samples, hp.sampling_mode, rng, batch);
    if (hp.clamp_to_unit_box) {
      for (std::size_t i = 0; i < batch.size(); ++i) {
        for (double& v : batch.row(i)) v = std::clamp(v, 0.0, 1.0);
      }
    }
    const std::vector<Label> labels = classify(f, batch);
    result.diagnostics.classifier_calls += batch.size();
    result.diagnostics.final_layer = {a0, a1};
    std::size_t enemies = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!is_enemy(labels[i], reference, hp.target)) continue;
      ++enemies;
      const double dist = l2_distance(batch.row(i), x.values());
      // Strict comparison keeps the earliest point on ties.
      if (dist < best_distance) {
        best_distance = dist;
        result.enemy = batch.point(i);
        result.enemy_label = labels[i];
        found = true;
      }
    }
    if (observer) {
      observer(LayerEvent{phase, a0, a1, batch, labels, enemies});
    }
    return enemies;
  };

  auto finish = [&]() {
    result.distance = best_distance;
    return result;
  };

  double eta = hp.eta;
  std::size_t enemies = explore(SearchPhase::kInitialBall, 0.0, eta);
  while (enemies > 0) {
    const double next = eta / 2.0;
    // The closest enemy seen so far lies within 2 * eta_floor.
    if (next < hp.eta_floor) return finish();
    eta = next;
    ++result.diagnostics.halvings;
    enemies = explore(SearchPhase::kInitialBall, 0.0, eta);
  }

  double a0 = eta;
  double a1 = 2.0 * eta;
  while (true) {
    if (a1 > radius_cap) {
      if (found) return finish();
      throw Error(ErrorCode::kNoEnemyFound,
                  "no enemy within radius " + std::to_string(radius_cap));
    }
    ++result.diagnostics.layers_explored;
    if (explore(SearchPhase::kLayer, a0, a1) > 0) break;
    a0 = a1;
    a1 += eta;
  }
  return finish();
}

// Convenience overload that evaluates the reference label f(x) itself.
inline GenerationResult generate_enemy(const Classifier& f,
                                       const FeatureVector& x,
                                       const Hyperparameters& hp,
                                       RandomSource& rng,
                                       const SearchObserver& observer = {}) {
  if (x.size() != f.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "observation has " + std::to_string(x.size()) +
                    " features, classifier expects " +
                    std::to_string(f.dimension()));
  }
  internal::check_finite(x.values(), "observation");
  return generate_enemy(f, x, classify_one(f, x), hp, rng, observer);
}

}  // namespace gs

#endif  // GROWING_SPHERES_SEARCH_HPP_
