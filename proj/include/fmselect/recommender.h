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

// Maps modeling assumptions to a technique category and an ordered chain of
// techniques, with a trace of every rule consulted on the way.

#ifndef FMSELECT_RECOMMENDER_H_
#define FMSELECT_RECOMMENDER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fmselect/errors.h"
#include "fmselect/feature_model.h"
#include "fmselect/knowledge_base.h"

namespace fmselect {

enum class Prediction { kCategory, kQuantity, kStructure, kNone };

// "category", "quantity", "structure", "none".
std::string_view to_string(Prediction prediction);
std::optional<Prediction> parse_prediction(std::string_view text);

struct ModelingAssumptions {
  std::int64_t sample_size = 0;
  std::int64_t num_features = 0;
  Prediction prediction = Prediction::kNone;
  bool labeled = false;
  bool text_data = false;
  // Only consulted for unlabeled category prediction, where it is required.
  std::optional<bool> known_categories;
  bool few_features = false;

  friend bool operator==(const ModelingAssumptions&,
                         const ModelingAssumptions&) = default;
};

// Throws InvalidArgument for negative counts.
void check_assumptions(const ModelingAssumptions& assumptions);

struct TraceEntry {
  std::string label;
  // Instantiated formula text, e.g. "Samplesize[299] > 50 and Predictiontype".
  std::string formula;
  bool value = false;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

// Alternatives of equal rank, in knowledge base declaration order.
using Step = std::vector<std::string>;

struct RecommendationChain {
  TechniqueCategory category = TechniqueCategory::kClassification;
  std::vector<Step> steps;
  std::vector<TraceEntry> trace;

  bool contains(std::string_view technique) const;
  friend bool operator==(const RecommendationChain&,
                         const RecommendationChain&) = default;
};

struct NoRecommendation {
  enum class Reason { kMoreDataNeeded, kToughLuck, kIndeterminateAssumptions };
  Reason reason = Reason::kToughLuck;
  // Names the rule labels involved.
  std::string detail;
  std::vector<TraceEntry> trace;

  friend bool operator==(const NoRecommendation&, const NoRecommendation&) = default;
};

std::string_view to_string(NoRecommendation::Reason reason);

using CategoryDecision = std::variant<TechniqueCategory, NoRecommendation>;
using Recommendation = std::variant<RecommendationChain, NoRecommendation>;

// Applies the "condition iff Category" rules.
CategoryDecision classify_problem(const KnowledgeBase& kb,
                                  const ModelingAssumptions& assumptions);

// Pure: equal inputs give equal chains and traces.
Recommendation recommend(const KnowledgeBase& kb,
                         const ModelingAssumptions& assumptions);

class NotRecommended : public Error {
 public:
  using Error::Error;
};

// A valid configuration of the knowledge base model that selects the
// assumption features, the category and `technique`, completed with the
// smallest remaining selection. The "not working" flag is left unselected.
// Throws NotRecommended unless `technique` is on the chain.
Configuration as_configuration(const KnowledgeBase& kb,
                               const ModelingAssumptions& assumptions,
                               std::string_view technique);
Configuration as_configuration(const KnowledgeBase& kb,
                               const ModelingAssumptions& assumptions,
                               FeatureId technique);

// The assumptions as a feature selection, optionally with a category, for
// evaluating rules. Not in general a valid configuration.
Configuration facts_configuration(const KnowledgeBase& kb,
                                  const ModelingAssumptions& assumptions,
                                  std::optional<TechniqueCategory> category);

}  // namespace fmselect

#endif  // FMSELECT_RECOMMENDER_H_
