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

// Re-selection after the modeling assumptions change. Everything is
// recomputed from scratch and the two outcomes are diffed.

#ifndef FMSELECT_ADAPTATION_H_
#define FMSELECT_ADAPTATION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fmselect/errors.h"
#include "fmselect/knowledge_base.h"
#include "fmselect/recommender.h"

namespace fmselect {

template <typename T>
struct Change {
  T old_value;
  T new_value;

  friend bool operator==(const Change&, const Change&) = default;
};

// Fields left empty are unchanged.
struct AssumptionDelta {
  std::optional<Change<std::int64_t>> sample_size;
  std::optional<Change<std::int64_t>> num_features;
  std::optional<Change<Prediction>> prediction;
  std::optional<Change<bool>> labeled;
  std::optional<Change<bool>> text_data;
  std::optional<Change<std::optional<bool>>> known_categories;
  std::optional<Change<bool>> few_features;

  bool empty() const;
  friend bool operator==(const AssumptionDelta&, const AssumptionDelta&) = default;
};

class StaleDelta : public Error {
 public:
  using Error::Error;
};

// Throws InvalidArgument for an empty delta or invalid new values, and
// StaleDelta when an old value does not match `assumptions`.
ModelingAssumptions apply_delta(const ModelingAssumptions& assumptions,
                                const AssumptionDelta& delta);

struct FeatureDiff {
  std::vector<std::string> selected;
  std::vector<std::string> deselected;

  bool empty() const { return selected.empty() && deselected.empty(); }
  friend bool operator==(const FeatureDiff&, const FeatureDiff&) = default;
};

struct AdaptationReport {
  ModelingAssumptions old_assumptions;
  ModelingAssumptions new_assumptions;
  Recommendation old_chain;
  Recommendation new_chain;
  // Rules whose condition evaluates differently under the two head
  // configurations, in label order. The condition is the antecedent of an
  // implication, the left side of a category rule, or the whole formula.
  std::vector<std::string> changed_constraints;
  // Technique-side features (category and chain techniques) gained and lost.
  FeatureDiff feature_diff;

  bool chains_identical() const;
};

AdaptationReport reselect(const KnowledgeBase& kb,
                          const ModelingAssumptions& assumptions,
                          const AssumptionDelta& delta);

}  // namespace fmselect

#endif  // FMSELECT_ADAPTATION_H_
