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

// Uniform draws on the unit sphere and in spherical layers
//   SL(x, a0, a1) = { z : a0 <= ||x - z||_2 <= a1 }.
// Directions are normalized standard Gaussian vectors; the radius is then
// drawn separately according to the sampling mode.

#ifndef GROWING_SPHERES_SAMPLER_HPP_
#define GROWING_SPHERES_SAMPLER_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "growing_spheres/core.hpp"
#include "growing_spheres/error.hpp"
#include "growing_spheres/random.hpp"

namespace gs {

struct LayerSpec {
  FeatureVector center;
  double a0 = 0.0;
  double a1 = 0.0;

  void validate() const {
    if (!(a0 >= 0.0) || !std::isfinite(a1) || a0 > a1) {
      throw Error(ErrorCode::kInvalidLayer,
                  "layer bounds must satisfy 0 <= a0 <= a1, got a0=" +
                      std::to_string(a0) + " a1=" + std::to_string(a1));
    }
    if (center.empty()) {
      throw Error(ErrorCode::kInvalidDimension, "layer center has dimension 0");
    }
  }
};

// Writes one uniform unit vector into `out`. Zero-norm draws are redrawn.
inline void draw_unit_vector(RandomSource& rng, std::span<double> out) {
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& v : out) {
      v = rng.normal();
      norm2 += v * v;
    }
  } while (norm2 == 0.0);
  const double norm = std::sqrt(norm2);
  for (double& v : out) v /= norm;
}

inline PointBatch sample_unit_sphere(std::size_t dimension, std::size_t n,
                                     RandomSource& rng) {
  if (dimension == 0) {
    throw Error(ErrorCode::kInvalidDimension, "unit sphere of dimension 0");
  }
  PointBatch out(dimension);
  out.reserve(n);
  FeatureVector u(dimension);
  for (std::size_t i = 0; i < n; ++i) {
    draw_unit_vector(rng, u.values());
    out.append(u);
  }
  return out;
}

// Draws a radius in [a0, a1].
inline double draw_radius(double a0, double a1, std::size_t dimension,
                          SamplingMode mode, RandomSource& rng) {
  const double u = rng.uniform();
  double r = 0.0;
  switch (mode) {
    case SamplingMode::kPaperRadiusUniform:
      r = a0 + u * (a1 - a0);
      break;
    case SamplingMode::kVolumeUniform: {
      if (a1 == 0.0) return 0.0;
      // r^d uniform on [a0^d, a1^d], factored by a1^d to avoid overflow.
      const double d = static_cast<double>(dimension);
      const double ratio = std::pow(a0 / a1, d);
      r = a1 * std::pow(u + (1.0 - u) * ratio, 1.0 / d);
      break;
    }
  }
  return std::clamp(r, a0, a1);
}

// Appends n points of the layer to `out`, which must have the layer's
// dimension.
inline void sample_layer_into(const LayerSpec& layer, std::size_t n,
                              SamplingMode mode, RandomSource& rng,
                              PointBatch& out) {
  layer.validate();
  const std::size_t d = layer.center.size();
  if (out.dimension() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "output batch dimension");
  }
  out.reserve(out.size() + n);
  if (layer.a1 == 0.0) {
    for (std::size_t i = 0; i < n; ++i) out.append(layer.center);
    return;
  }
  FeatureVector z(d);
  for (std::size_t i = 0; i < n; ++i) {
    draw_unit_vector(rng, z.values());
    const double r = draw_radius(layer.a0, layer.a1, d, mode, rng);
    for (std::size_t j = 0; j < d; ++j) z[j] = layer.center[j] + r * z[j];
    out.append(z);
  }
}

inline PointBatch sample_layer(const LayerSpec& layer, std::size_t n,
                               SamplingMode mode, RandomSource& rng) {
  layer.validate();
  PointBatch out(layer.center.size());
  sample_layer_into(layer, n, mode, rng, out);
  return out;
}

}  // namespace gs

#endif  // GROWING_SPHERES_SAMPLER_HPP_
