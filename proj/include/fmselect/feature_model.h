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

// Feature models: a feature tree with mandatory/optional children and
// or/xor groups, integer attributes, and labeled cross-tree constraints.
//
// Group membership overrides the Mandatory/Optional flag: members of a group
// are individually optional and only the group cardinality applies. The flag
// is still stored so that text round-trips exactly.

#ifndef FMSELECT_FEATURE_MODEL_H_
#define FMSELECT_FEATURE_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fmselect/formula.h"

namespace fmselect {

using FeatureId = std::uint32_t;

enum class Variation { kMandatory, kOptional };
enum class GroupKind { kOr, kXor };

std::string_view to_string(Variation variation);
std::string_view to_string(GroupKind kind);

struct Feature {
  std::string name;
  std::optional<FeatureId> parent;
  Variation variation = Variation::kOptional;
  // Index into FeatureModel::groups when the feature is a group member.
  std::optional<std::size_t> group;

  friend bool operator==(const Feature&, const Feature&) = default;
};

struct FeatureGroup {
  FeatureId parent = 0;
  GroupKind kind = GroupKind::kXor;
  std::vector<FeatureId> members;

  friend bool operator==(const FeatureGroup&, const FeatureGroup&) = default;
};

// Attributes range over the integers.
struct AttributeDecl {
  std::string name;

  friend bool operator==(const AttributeDecl&, const AttributeDecl&) = default;
};

struct NamedConstraint {
  std::string label;
  Formula formula;

  friend bool operator==(const NamedConstraint&,
                         const NamedConstraint&) = default;
};

// Plain value type. FeatureId is the index into `features`, which holds the
// features in declaration (pre-)order. Nothing here enforces
// well-formedness; use validate_model.
struct FeatureModel {
  std::string name;
  std::vector<Feature> features;
  std::vector<FeatureGroup> groups;
  std::vector<AttributeDecl> attributes;
  std::vector<NamedConstraint> constraints;

  std::size_t size() const { return features.size(); }
  std::optional<FeatureId> find(std::string_view feature_name) const;
  // The first parentless feature.
  std::optional<FeatureId> root() const;
  // Children in declaration order.
  std::vector<FeatureId> children(FeatureId parent) const;
  bool has_attribute(std::string_view attribute) const;
  const NamedConstraint* constraint(std::string_view label) const;
  const std::string& name_of(FeatureId id) const { return features[id].name; }

  friend bool operator==(const FeatureModel&, const FeatureModel&) = default;
};

// Appends features in call order; callers building nested trees should add
// them depth-first so that ids follow declaration order.
class ModelBuilder {
 public:
  explicit ModelBuilder(std::string model_name);

  FeatureId root(std::string name);
  FeatureId child(FeatureId parent, std::string name,
                  Variation variation = Variation::kOptional);
  std::size_t group(FeatureId parent, GroupKind kind);
  FeatureId member(std::size_t group, std::string name,
                   Variation variation = Variation::kOptional);
  ModelBuilder& attribute(std::string name);
  ModelBuilder& constraint(std::string label, Formula formula);

  FeatureModel build() &&;

 private:
  FeatureModel model_;
};

struct Configuration {
  std::set<FeatureId> selected;
  AttributeValuation attributes;

  bool is_selected(FeatureId id) const { return selected.contains(id); }
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

// Throws InvalidArgument for a name the model does not declare.
Configuration make_configuration(const FeatureModel& model,
                                 const std::vector<std::string>& selected,
                                 AttributeValuation attributes = {});
std::vector<std::string> selected_names(const FeatureModel& model,
                                        const Configuration& config);

struct ModelViolation {
  enum class Kind {
    kNoRoot,
    kMultipleRoots,
    kDanglingParent,
    kCycle,
    kDuplicateName,
    kUnknownSymbol,
    kUndersizedGroup,
    kBadGroupMembership,
  };
  Kind kind;
  // Feature, attribute, group parent or constraint label concerned.
  std::string subject;
  std::string message;
};
std::string_view to_string(ModelViolation::Kind kind);

using WellFormednessReport = std::vector<ModelViolation>;

WellFormednessReport validate_model(const FeatureModel& model);

// Evaluates a formula against a configuration of `model`. Feature literals
// that the model does not declare evaluate to false.
bool eval_formula(const FeatureModel& model, const Formula& formula,
                  const Configuration& config);

struct ConfigViolation {
  enum class Kind {
    kUnknownFeature,
    kRootNotSelected,
    kParentNotSelected,
    kMandatoryMissing,
    kXorViolation,
    kOrViolation,
    kGroupWithoutParent,
    kConstraintViolated,
  };
  Kind kind;
  // Feature name, group parent name, or constraint label.
  std::string subject;
};
std::string_view to_string(ConfigViolation::Kind kind);

struct Verdict {
  std::vector<ConfigViolation> violations;
  bool valid() const { return violations.empty(); }
};

// Requires a well-formed model. Propagates MissingAttribute from constraint
// evaluation.
Verdict is_valid_configuration(const FeatureModel& model,
                               const Configuration& config);

// Compares models by feature name rather than by id: same root, same parent,
// variation, group kind and sibling order for every feature, same attributes,
// and the same formula under every constraint label.
bool structurally_equal(const FeatureModel& a, const FeatureModel& b);

}  // namespace fmselect

#endif  // FMSELECT_FEATURE_MODEL_H_
