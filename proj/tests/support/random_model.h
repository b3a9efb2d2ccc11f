/*
 * Copyright 2026 The fmselect Authors.
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

// Random well-formed feature models for property tests.

#ifndef FMSELECT_TESTS_RANDOM_MODEL_H_
#define FMSELECT_TESTS_RANDOM_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <random>

#include "fmselect/feature_model.h"
#include "fmselect/formula.h"

namespace fmselect::testing {

struct RandomModelOptions {
  // Bounds on the feature count; the generator aims for a size in between
  // and never exceeds the maximum.
  std::size_t min_features = 1;
  std::size_t max_features = 16;
  std::size_t max_constraints = 4;
  std::size_t max_formula_depth = 3;
  // Attributes "a0".."a(n-1)"; comparisons use constants in [-5, 200].
  std::size_t attributes = 2;
};

FeatureModel random_model(std::mt19937_64& rng, const RandomModelOptions& options);

// A formula over the model's features and attributes.
Formula random_formula(std::mt19937_64& rng, const FeatureModel& model, std::size_t depth);

// Values for every declared attribute.
AttributeValuation random_valuation(std::mt19937_64& rng, const FeatureModel& model);

}  // namespace fmselect::testing

#endif  // FMSELECT_TESTS_RANDOM_MODEL_H_
