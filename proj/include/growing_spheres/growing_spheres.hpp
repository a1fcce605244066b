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

// Umbrella header.

#ifndef GROWING_SPHERES_GROWING_SPHERES_HPP_
#define GROWING_SPHERES_GROWING_SPHERES_HPP_

#include "growing_spheres/builtin.hpp"
#include "growing_spheres/classifier.hpp"
#include "growing_spheres/core.hpp"
#include "growing_spheres/error.hpp"
#include "growing_spheres/explainer.hpp"
#include "growing_spheres/external.hpp"
#include "growing_spheres/format.hpp"
#include "growing_spheres/io.hpp"
#include "growing_spheres/random.hpp"
#include "growing_spheres/sampler.hpp"
#include "growing_spheres/scaler.hpp"
#include "growing_spheres/search.hpp"
#include "growing_spheres/sparsify.hpp"

#endif  // GROWING_SPHERES_GROWING_SPHERES_HPP_
