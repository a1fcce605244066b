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

// End-to-end explanation: scale the observation, find the closest enemy,
// sparsify it and report the move with its cost.

#ifndef GROWING_SPHERES_EXPLAINER_HPP_
#define GROWING_SPHERES_EXPLAINER_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <span>
#include <thread>
#include <variant>
#include <vector>

#include "growing_spheres/classifier.hpp"
#include "growing_spheres/core.hpp"
#include "growing_spheres/error.hpp"
#include "growing_spheres/random.hpp"
#include "growing_spheres/scaler.hpp"
#include "growing_spheres/search.hpp"
#include "growing_spheres/sparsify.hpp"

namespace gs {

// `stream` selects the random stream under hp.seed. Batch runs use the row
// index, so explaining row i alone reproduces row i of a batch.
inline Explanation explain(const Classifier& f,
                           const FeatureVector& x_original,
                           const ScalingModel& scaling,
                           const Hyperparameters& hp,
                           std::uint64_t stream = 0) {
  internal::check_finite(x_original.values(), "observation");
  Explanation out;
  out.x = scaling.apply(x_original);
  if (out.x.size() != f.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "observation has " + std::to_string(out.x.size()) +
                    " features, classifier expects " +
                    std::to_string(f.dimension()));
  }
  out.label_x = classify_one(f, out.x);

  RandomSource rng(hp.seed, stream);
  GenerationResult generated = generate_enemy(f, out.x, out.label_x, hp, rng);
  SparsifyResult sparse =
      sparsify(f, out.x, generated.enemy, out.label_x, hp.target);

  out.enemy_raw = std::move(generated.enemy);
  out.enemy_final = std::move(sparse.enemy);
  out.label_enemy = sparse.enemy_label;
  out.move = FeatureVector(out.x.size());
  for (std::size_t i = 0; i < out.x.size(); ++i) {
    out.move[i] = out.enemy_final[i] - out.x[i];
  }
  out.move_original_units = scaling.invert_move(out.move);
  out.cost_raw = cost(out.x, out.enemy_raw, hp.gamma);
  out.cost_final = cost(out.x, out.enemy_final, hp.gamma);

  out.diagnostics = generated.diagnostics;
  // f(x) plus the sparsification queries.
  out.diagnostics.classifier_calls += 1 + sparse.classifier_calls;
  return out;
}

struct BatchItem {
  std::size_t index = 0;
  std::variant<Explanation, Error> result;

  bool ok() const noexcept {
    return std::holds_alternative<Explanation>(result);
  }
  const Explanation& explanation() const {
    return std::get<Explanation>(result);
  }
  const Error& error() const { return std::get<Error>(result); }
};

// Explains every row; failures are recorded per item. Results do not depend
// on `workers`. Classifiers that are not concurrent safe run sequentially.
inline std::vector<BatchItem> explain_batch(const Classifier& f,
                                            std::span<const FeatureVector> rows,
                                            const ScalingModel& scaling,
                                            const Hyperparameters& hp,
                                            std::size_t workers = 1) {
  std::vector<BatchItem> items(rows.size());

  auto run_one = [&](std::size_t i) {
    items[i].index = i;
    try {
      items[i].result = explain(f, rows[i], scaling, hp, i);
    } catch (const Error& e) {
      items[i].result = e;
    } catch (const std::exception& e) {
      items[i].result = Error(ErrorCode::kClassifierFailure, e.what());
    }
  };

  if (!f.concurrent_safe()) workers = 1;
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(rows.size(), 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) run_one(i);
    return items;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < rows.size(); i = next++) run_one(i);
    });
  }
  pool.clear();  // joins
  return items;
}

struct CdfPoint {
  std::size_t sparsity = 0;
  double fraction = 0.0;

  friend bool operator==(const CdfPoint&, const CdfPoint&) = default;
};

// Empirical CDF of explanation sparsity: one point per observed value.
inline std::vector<CdfPoint> sparsity_cdf(std::span<const std::size_t> sparsities) {
  if (sparsities.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no explanations to summarize");
  }
  std::map<std::size_t, std::size_t> counts;
  for (std::size_t k : sparsities) ++counts[k];
  std::vector<CdfPoint> out;
  out.reserve(counts.size());
  std::size_t running = 0;
  const double total = static_cast<double>(sparsities.size());
  for (const auto& [k, count] : counts) {
    running += count;
    out.push_back({k, static_cast<double>(running) / total});
  }
  out.back().fraction = 1.0;
  return out;
}

inline std::vector<CdfPoint> sparsity_cdf(std::span<const Explanation> explanations) {
  std::vector<std::size_t> sparsities;
  sparsities.reserve(explanations.size());
  for (const Explanation& e : explanations) {
    sparsities.push_back(l0_distance(e.move.values(),
                                     FeatureVector(e.move.size()).values()));
  }
  return sparsity_cdf(std::span<const std::size_t>(sparsities));
}

}  // namespace gs

#endif  // GROWING_SPHERES_EXPLAINER_HPP_
