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

// A deliberately naive model of the configuration semantics, written
// against the plain FeatureModel data without using any library analysis.
// Property tests compare the engine with it.

#ifndef FMSELECT_TESTS_ORACLE_H_
#define FMSELECT_TESTS_ORACLE_H_

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fmselect/analysis.h"
#include "fmselect/feature_model.h"

namespace fmselect::testing {

using Mask = std::uint64_t;

// Plain recursive evaluation; throws std::out_of_range for an unvalued
// attribute.
bool oracle_eval(const FeatureModel& model, const Formula& formula, Mask mask,
                 const AttributeValuation& attributes);

bool oracle_valid(const FeatureModel& model, Mask mask, const AttributeValuation& attributes);

// Every valid selection, ascending.
std::vector<Mask> oracle_valid_masks(const FeatureModel& model,
                                     const AttributeValuation& attributes);

struct OraclePropagation {
  bool conflict = false;
  std::set<FeatureId> forced_selected;
  std::set<FeatureId> forced_excluded;
};

// `valid` as returned by oracle_valid_masks.
OraclePropagation oracle_propagate(const std::vector<Mask>& valid, std::size_t features,
                                   const std::vector<Assignment>& partial);

// The completion that reads smallest feature by feature, unselected first.
std::optional<Mask> oracle_lexmin(const std::vector<Mask>& valid, std::size_t features,
                                  const std::vector<Assignment>& partial);

Configuration mask_to_configuration(Mask mask, const AttributeValuation& attributes);
Mask configuration_to_mask(const Configuration& config);

// Runs the engine's enumeration, validity, propagation and completion on
// `model` and reports every disagreement with the oracle. Empty means the
// engine agrees everywhere.
std::vector<std::string> compare_with_oracle(const FeatureModel& model,
                                             const AttributeValuation& attributes,
                                             std::mt19937_64& rng);

}  // namespace fmselect::testing

#endif  // FMSELECT_TESTS_ORACLE_H_
