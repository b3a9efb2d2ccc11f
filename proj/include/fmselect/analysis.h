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

// Configuration-space analysis: enumeration, completion and propagation.
//
// Two families of routines live here. The brute-force kernels walk every
// selection bitmask of a small model (at most kEnumerationLimit features) and
// run in parallel with OpenMP; the serial versions under `reference` are
// kept as the correctness oracle. Completion and propagation use a DPLL
// search over a clausal encoding of the model, so they also work on models
// far beyond the enumeration guard; they must agree with the brute-force
// reference wherever both apply.

#ifndef FMSELECT_ANALYSIS_H_
#define FMSELECT_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "fmselect/feature_model.h"

namespace fmselect {

inline constexpr std::size_t kEnumerationLimit = 24;

enum class Execution { kSerial, kParallel };

enum class Assignment : std::uint8_t { kUnknown, kSelected, kExcluded };

struct PartialConfiguration {
  std::vector<Assignment> assignments;  // indexed by FeatureId
  AttributeValuation attributes;

  // All features unknown.
  static PartialConfiguration unknown(const FeatureModel& model,
                                      AttributeValuation attributes = {});
  // Throws InvalidArgument for an undeclared feature name.
  PartialConfiguration& set(const FeatureModel& model, std::string_view name,
                            Assignment value);
};

struct PropagationResult {
  // No valid completion exists; the forced sets are then empty.
  bool conflict = false;
  // Features selected (resp. unselected) in every valid completion,
  // including those the partial configuration already fixed.
  std::set<FeatureId> forced_selected;
  std::set<FeatureId> forced_excluded;

  friend bool operator==(const PropagationResult&,
                         const PropagationResult&) = default;
};

// Valid configurations under a fixed attribute valuation, ordered by
// selection bitmask (bit i is feature i), truncated to `limit`. Throws
// TooLarge above kEnumerationLimit features and MissingAttribute when a
// constraint compares an unvalued attribute.
std::vector<Configuration> enumerate_configurations(
    const FeatureModel& model, const AttributeValuation& attributes,
    std::size_t limit = std::numeric_limits<std::size_t>::max(),
    Execution execution = Execution::kParallel);

// Number of valid configurations; same guard as enumerate_configurations.
std::uint64_t count_configurations(const FeatureModel& model,
                                   const AttributeValuation& attributes,
                                   Execution execution = Execution::kParallel);

bool is_satisfiable(const FeatureModel& model,
                    const PartialConfiguration& partial);

// The valid completion that is smallest when read as a bit string in
// feature order with "unselected" before "selected"; nullopt if none exists.
std::optional<Configuration> complete(const FeatureModel& model,
                                      const PartialConfiguration& partial);

PropagationResult propagate(const FeatureModel& model,
                            const PartialConfiguration& partial,
                            Execution execution = Execution::kParallel);

namespace reference {

// Serial brute force over all 2^n bitmasks. Same contract and guard as the
// top-level functions.
std::vector<Configuration> enumerate_configurations(
    const FeatureModel& model, const AttributeValuation& attributes,
    std::size_t limit = std::numeric_limits<std::size_t>::max());

PropagationResult propagate(const FeatureModel& model,
                            const PartialConfiguration& partial);

}  // namespace reference

}  // namespace fmselect

#endif  // FMSELECT_ANALYSIS_H_
