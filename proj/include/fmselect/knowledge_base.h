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

// The scikit-learn selection heuristics: a merged feature model of modeling
// techniques and modeling assumptions, its labeled selection rules, and the
// "not working" fallback edges between techniques.

#ifndef FMSELECT_KNOWLEDGE_BASE_H_
#define FMSELECT_KNOWLEDGE_BASE_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fmselect/errors.h"
#include "fmselect/feature_model.h"
#include "fmselect/formula.h"

namespace fmselect {

enum class TechniqueCategory {
  kClassification,
  kRegression,
  kClustering,
  kDimensionalityReduction,
};

inline constexpr std::array<TechniqueCategory, 4> kAllCategories = {
    TechniqueCategory::kClassification, TechniqueCategory::kRegression,
    TechniqueCategory::kClustering, TechniqueCategory::kDimensionalityReduction};

// Names the knowledge base must declare. The assumption features live under
// ModelingAssumptions; Samplesize and NumFeatures are attributes.
namespace kb {
inline constexpr std::string_view kTechniques = "ModelingTechniques";
inline constexpr std::string_view kAssumptions = "ModelingAssumptions";
inline constexpr std::string_view kPredictiontype = "Predictiontype";
inline constexpr std::string_view kCategory = "Category";
inline constexpr std::string_view kQuantity = "Quantity";
inline constexpr std::string_view kStructure = "Structure";
inline constexpr std::string_view kLabeledData = "LabeledData";
inline constexpr std::string_view kTextdata = "Textdata";
inline constexpr std::string_view kKnowncategories = "Knowncategories";
inline constexpr std::string_view kFewfeatures = "Fewfeatures";
inline constexpr std::string_view kNotWorking = "NotWorking";
inline constexpr std::string_view kSamplesize = "Samplesize";
inline constexpr std::string_view kNumFeatures = "NumFeatures";
}  // namespace kb

// The feature name, e.g. "DimensionalityReduction".
std::string_view to_string(TechniqueCategory category);
std::optional<TechniqueCategory> parse_category(std::string_view name);

// Taken when the `from` technique does not work and `guard` holds.
struct FallbackEdge {
  std::string from;
  Formula guard;
  std::vector<std::string> to;
  // Label of the constraint the edge was read from.
  std::string source;
};

// An implication whose antecedent mentions only assumptions and one
// category and whose consequent is a disjunction of that category's
// techniques. A firing rule gives the first step of a chain.
struct EntryRule {
  std::string label;
  TechniqueCategory category;
  Formula antecedent;
  std::vector<std::string> techniques;
};

// A "condition iff Category" rule.
struct CategoryRule {
  std::string label;
  TechniqueCategory category;
  Formula condition;
};

class KnowledgeBaseError : public Error {
 public:
  using Error::Error;
};

class KnowledgeBase {
 public:
  // Throws KnowledgeBaseError when the model is not well formed, lacks the
  // expected top-level structure, or an edge names anything other than a
  // technique leaf.
  KnowledgeBase(FeatureModel model, std::vector<FallbackEdge> edges);

  // `fallbacks_json` is {"edges":[{"from","guard","to":[..],"source"}]}.
  static KnowledgeBase from_sources(std::string_view model_text,
                                    std::string_view fallbacks_json);

  const FeatureModel& model() const { return model_; }
  const std::vector<FallbackEdge>& fallback_edges() const { return edges_; }
  const std::vector<EntryRule>& entry_rules() const { return entry_rules_; }
  const std::vector<CategoryRule>& category_rules() const { return category_rules_; }
  // Labels of constraints over assumptions and categories only, such as
  // "Clustering and not Knowncategories implies Samplesize < 10000".
  const std::vector<std::string>& assumption_rules() const { return assumption_rules_; }

  // Technique leaves of a category in declaration order.
  const std::vector<std::string>& techniques(TechniqueCategory category) const;
  std::optional<TechniqueCategory> category_of(std::string_view technique) const;
  bool is_technique(std::string_view name) const;
  // Features under ModelingAssumptions, in declaration order.
  const std::vector<FeatureId>& assumption_features() const { return assumption_features_; }
  // Features under ModelingTechniques, in declaration order.
  const std::vector<FeatureId>& technique_features() const { return technique_features_; }

  // Throws InvalidArgument for an unknown feature.
  FeatureId id(std::string_view feature) const;

 private:
  FeatureModel model_;
  std::vector<FallbackEdge> edges_;
  std::vector<EntryRule> entry_rules_;
  std::vector<CategoryRule> category_rules_;
  std::vector<std::string> assumption_rules_;
  std::array<std::vector<std::string>, 4> techniques_;
  std::vector<FeatureId> assumption_features_;
  std::vector<FeatureId> technique_features_;
};

// The embedded scikit-learn knowledge base. Parses the embedded assets on
// every call; throws KnowledgeBaseError (wrapping parse diagnostics) if they
// are corrupt.
KnowledgeBase load_knowledge_base();

// The embedded assets, byte for byte: the model, the fallback edges, and
// the published baseline metrics reports.
std::string_view embedded_model_text();
std::string_view embedded_fallbacks_text();
std::string_view embedded_baselines_text();

struct CheckFailure {
  // "symbols", "labels", "derivability", "acyclic" or "coverage".
  std::string check;
  std::string subject;
  std::string detail;
};

struct CheckReport {
  std::vector<std::string> checks;
  std::vector<CheckFailure> failures;
  std::vector<std::string> notes;

  bool passed() const { return failures.empty(); }
};

// The constraint labels the knowledge base must carry, in natural order.
std::vector<std::string> expected_constraint_labels();

// Verifies that every symbol resolves and the label set is complete, that
// each category is forced by some assumption valuation, that the fallback
// graph is acyclic within each category, and that every fallback target
// occurs in a technique rule.
CheckReport self_check(const KnowledgeBase& kb);

}  // namespace fmselect

#endif  // FMSELECT_KNOWLEDGE_BASE_H_
