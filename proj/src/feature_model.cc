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

#include "fmselect/feature_model.h"

#include <algorithm>
#include <map>
#include <utility>

#include "fmselect/errors.h"

namespace fmselect {

std::string_view to_string(Variation variation) {
  return variation == Variation::kMandatory ? "mandatory" : "optional";
}

std::string_view to_string(GroupKind kind) {
  return kind == GroupKind::kXor ? "xor" : "or";
}

std::string_view to_string(ModelViolation::Kind kind) {
  switch (kind) {
    case ModelViolation::Kind::kNoRoot:
      return "NoRoot";
    case ModelViolation::Kind::kMultipleRoots:
      return "MultipleRoots";
    case ModelViolation::Kind::kDanglingParent:
      return "DanglingParent";
    case ModelViolation::Kind::kCycle:
      return "Cycle";
    case ModelViolation::Kind::kDuplicateName:
      return "DuplicateName";
    case ModelViolation::Kind::kUnknownSymbol:
      return "UnknownSymbol";
    case ModelViolation::Kind::kUndersizedGroup:
      return "UndersizedGroup";
    case ModelViolation::Kind::kBadGroupMembership:
      return "BadGroupMembership";
  }
  return "?";
}

std::string_view to_string(ConfigViolation::Kind kind) {
  switch (kind) {
    case ConfigViolation::Kind::kUnknownFeature:
      return "UnknownFeature";
    case ConfigViolation::Kind::kRootNotSelected:
      return "RootNotSelected";
    case ConfigViolation::Kind::kParentNotSelected:
      return "ParentNotSelected";
    case ConfigViolation::Kind::kMandatoryMissing:
      return "MandatoryMissing";
    case ConfigViolation::Kind::kXorViolation:
      return "XorViolation";
    case ConfigViolation::Kind::kOrViolation:
      return "OrViolation";
    case ConfigViolation::Kind::kGroupWithoutParent:
      return "GroupWithoutParent";
    case ConfigViolation::Kind::kConstraintViolated:
      return "ConstraintViolated";
  }
  return "?";
}

std::optional<FeatureId> FeatureModel::find(std::string_view feature_name) const {
  for (FeatureId id = 0; id < features.size(); ++id) {
    if (features[id].name == feature_name) return id;
  }
  return std::nullopt;
}

std::optional<FeatureId> FeatureModel::root() const {
  for (FeatureId id = 0; id < features.size(); ++id) {
    if (!features[id].parent) return id;
  }
  return std::nullopt;
}

std::vector<FeatureId> FeatureModel::children(FeatureId parent) const {
  std::vector<FeatureId> out;
  for (FeatureId id = 0; id < features.size(); ++id) {
    if (features[id].parent == parent) out.push_back(id);
  }
  return out;
}

bool FeatureModel::has_attribute(std::string_view attribute) const {
  return std::any_of(attributes.begin(), attributes.end(),
                     [&](const AttributeDecl& a) { return a.name == attribute; });
}

const NamedConstraint* FeatureModel::constraint(std::string_view label) const {
  for (const auto& c : constraints) {
    if (c.label == label) return &c;
  }
  return nullptr;
}

ModelBuilder::ModelBuilder(std::string model_name) {
  model_.name = std::move(model_name);
}

FeatureId ModelBuilder::root(std::string name) {
  model_.features.push_back({std::move(name), std::nullopt, Variation::kMandatory, {}});
  return static_cast<FeatureId>(model_.features.size() - 1);
}

FeatureId ModelBuilder::child(FeatureId parent, std::string name,
                              Variation variation) {
  model_.features.push_back({std::move(name), parent, variation, {}});
  return static_cast<FeatureId>(model_.features.size() - 1);
}

std::size_t ModelBuilder::group(FeatureId parent, GroupKind kind) {
  model_.groups.push_back({parent, kind, {}});
  return model_.groups.size() - 1;
}

FeatureId ModelBuilder::member(std::size_t group, std::string name,
                               Variation variation) {
  const FeatureId id = child(model_.groups.at(group).parent, std::move(name),
                             variation);
  model_.features[id].group = group;
  model_.groups[group].members.push_back(id);
  return id;
}

ModelBuilder& ModelBuilder::attribute(std::string name) {
  model_.attributes.push_back({std::move(name)});
  return *this;
}

ModelBuilder& ModelBuilder::constraint(std::string label, Formula formula) {
  model_.constraints.push_back({std::move(label), std::move(formula)});
  return *this;
}

FeatureModel ModelBuilder::build() && { return std::move(model_); }

Configuration make_configuration(const FeatureModel& model,
                                 const std::vector<std::string>& selected,
                                 AttributeValuation attributes) {
  Configuration config;
  for (const auto& name : selected) {
    auto id = model.find(name);
    if (!id) throw InvalidArgument("unknown feature '" + name + "'");
    config.selected.insert(*id);
  }
  config.attributes = std::move(attributes);
  return config;
}

std::vector<std::string> selected_names(const FeatureModel& model,
                                        const Configuration& config) {
  std::vector<std::string> out;
  for (FeatureId id : config.selected) {
    if (id < model.size()) out.push_back(model.name_of(id));
  }
  return out;
}

WellFormednessReport validate_model(const FeatureModel& model) {
  WellFormednessReport report;
  auto add = [&](ModelViolation::Kind kind, std::string subject,
                 std::string message) {
    report.push_back({kind, std::move(subject), std::move(message)});
  };
  const std::size_t n = model.size();

  std::vector<FeatureId> roots;
  for (FeatureId id = 0; id < n; ++id) {
    const auto& f = model.features[id];
    if (!f.parent) {
      roots.push_back(id);
    } else if (*f.parent >= n || *f.parent == id) {
      if (*f.parent == id) {
        add(ModelViolation::Kind::kCycle, f.name,
            "feature '" + f.name + "' is its own parent");
      } else {
        add(ModelViolation::Kind::kDanglingParent, f.name,
            "feature '" + f.name + "' has a parent id outside the model");
      }
    }
  }
  if (roots.empty()) {
    add(ModelViolation::Kind::kNoRoot, model.name, "model has no root feature");
  }
  for (std::size_t i = 1; i < roots.size(); ++i) {
    const auto& name = model.name_of(roots[i]);
    add(ModelViolation::Kind::kMultipleRoots, name,
        "feature '" + name + "' is a second root");
  }

  // Longer cycles: walk up from every feature; a walk longer than n steps
  // never reaches a root. Each cycle is reported once, by its smallest id.
  std::set<FeatureId> reported;
  for (FeatureId start = 0; start < n; ++start) {
    std::vector<FeatureId> path;
    std::set<FeatureId> seen;
    std::optional<FeatureId> cur = start;
    while (cur && *cur < n && !seen.contains(*cur)) {
      seen.insert(*cur);
      path.push_back(*cur);
      cur = model.features[*cur].parent;
    }
    if (!cur || *cur >= n) continue;
    // *cur closes a cycle.
    auto first = std::find(path.begin(), path.end(), *cur);
    std::vector<FeatureId> cycle(first, path.end());
    if (cycle.size() < 2) continue;  // self-parent reported above
    const FeatureId smallest = *std::min_element(cycle.begin(), cycle.end());
    if (!reported.insert(smallest).second) continue;
    std::string members;
    for (FeatureId id : cycle) {
      if (!members.empty()) members += " -> ";
      members += model.name_of(id);
    }
    add(ModelViolation::Kind::kCycle, model.name_of(smallest),
        "parent cycle: " + members);
  }

  std::map<std::string, int, std::less<>> feature_names;
  for (const auto& f : model.features) {
    if (++feature_names[f.name] == 2) {
      add(ModelViolation::Kind::kDuplicateName, f.name,
          "feature name '" + f.name + "' declared more than once");
    }
  }
  std::map<std::string, int, std::less<>> attribute_names;
  for (const auto& a : model.attributes) {
    if (feature_names.contains(a.name)) {
      add(ModelViolation::Kind::kDuplicateName, a.name,
          "attribute '" + a.name + "' has the same name as a feature");
    }
    if (++attribute_names[a.name] == 2) {
      add(ModelViolation::Kind::kDuplicateName, a.name,
          "attribute '" + a.name + "' declared more than once");
    }
  }
  std::map<std::string, int, std::less<>> labels;
  for (const auto& c : model.constraints) {
    if (++labels[c.label] == 2) {
      add(ModelViolation::Kind::kDuplicateName, c.label,
          "constraint label '" + c.label + "' used more than once");
    }
    const auto symbols = collect_symbols(c.formula);
    for (const auto& s : symbols.features) {
      if (!feature_names.contains(s)) {
        add(ModelViolation::Kind::kUnknownSymbol, s,
            "constraint " + c.label + " references unknown feature '" + s + "'");
      }
    }
    for (const auto& s : symbols.attributes) {
      if (!attribute_names.contains(s)) {
        add(ModelViolation::Kind::kUnknownSymbol, s,
            "constraint " + c.label + " compares unknown attribute '" + s + "'");
      }
    }
  }

  std::vector<int> membership(n, 0);
  for (std::size_t g = 0; g < model.groups.size(); ++g) {
    const auto& group = model.groups[g];
    const std::string parent_name =
        group.parent < n ? model.name_of(group.parent) : "#" + std::to_string(group.parent);
    if (group.members.size() < 2) {
      add(ModelViolation::Kind::kUndersizedGroup, parent_name,
          std::string(to_string(group.kind)) + " group under '" + parent_name +
              "' has " + std::to_string(group.members.size()) +
              " member(s); at least 2 required");
    }
    for (FeatureId m : group.members) {
      if (m >= n) {
        add(ModelViolation::Kind::kBadGroupMembership, parent_name,
            "group under '" + parent_name + "' lists a feature id outside the model");
        continue;
      }
      const auto& f = model.features[m];
      if (++membership[m] == 2) {
        add(ModelViolation::Kind::kBadGroupMembership, f.name,
            "feature '" + f.name + "' belongs to more than one group");
      }
      if (f.parent != group.parent || f.group != g) {
        add(ModelViolation::Kind::kBadGroupMembership, f.name,
            "feature '" + f.name + "' is listed in a group of '" + parent_name +
                "' but its parent or group index disagrees");
      }
    }
  }
  for (FeatureId id = 0; id < n; ++id) {
    const auto& f = model.features[id];
    if (f.group && (*f.group >= model.groups.size() ||
                    std::find(model.groups[*f.group].members.begin(),
                              model.groups[*f.group].members.end(),
                              id) == model.groups[*f.group].members.end())) {
      add(ModelViolation::Kind::kBadGroupMembership, f.name,
          "feature '" + f.name + "' names a group that does not list it");
    }
  }
  return report;
}

bool eval_formula(const FeatureModel& model, const Formula& formula,
                  const Configuration& config) {
  return evaluate(
      formula,
      [&](std::string_view name) {
        auto id = model.find(name);
        return id && config.is_selected(*id);
      },
      config.attributes);
}

Verdict is_valid_configuration(const FeatureModel& model,
                               const Configuration& config) {
  Verdict verdict;
  auto add = [&](ConfigViolation::Kind kind, std::string subject) {
    verdict.violations.push_back({kind, std::move(subject)});
  };
  const std::size_t n = model.size();
  for (FeatureId id : config.selected) {
    if (id >= n) add(ConfigViolation::Kind::kUnknownFeature, "#" + std::to_string(id));
  }
  const auto root = model.root();
  if (root && !config.is_selected(*root)) {
    add(ConfigViolation::Kind::kRootNotSelected, model.name_of(*root));
  }
  for (FeatureId id = 0; id < n; ++id) {
    const auto& f = model.features[id];
    if (!f.parent) continue;
    const bool selected = config.is_selected(id);
    const bool parent_selected = config.is_selected(*f.parent);
    if (selected && !parent_selected) {
      add(f.group ? ConfigViolation::Kind::kGroupWithoutParent
                  : ConfigViolation::Kind::kParentNotSelected,
          f.name);
    }
    if (!selected && parent_selected && !f.group &&
        f.variation == Variation::kMandatory) {
      add(ConfigViolation::Kind::kMandatoryMissing, f.name);
    }
  }
  for (const auto& group : model.groups) {
    if (!config.is_selected(group.parent)) continue;
    const auto count = std::count_if(
        group.members.begin(), group.members.end(),
        [&](FeatureId m) { return config.is_selected(m); });
    if (group.kind == GroupKind::kXor && count != 1) {
      add(ConfigViolation::Kind::kXorViolation, model.name_of(group.parent));
    } else if (group.kind == GroupKind::kOr && count < 1) {
      add(ConfigViolation::Kind::kOrViolation, model.name_of(group.parent));
    }
  }
  for (const auto& c : model.constraints) {
    if (!eval_formula(model, c.formula, config)) {
      add(ConfigViolation::Kind::kConstraintViolated, c.label);
    }
  }
  return verdict;
}

namespace {

std::optional<std::string> parent_name(const FeatureModel& m, const Feature& f) {
  if (!f.parent || *f.parent >= m.size()) return std::nullopt;
  return m.name_of(*f.parent);
}

std::vector<std::string> names_of(const FeatureModel& m,
                                  const std::vector<FeatureId>& ids) {
  std::vector<std::string> out;
  for (FeatureId id : ids) out.push_back(id < m.size() ? m.name_of(id) : "");
  return out;
}

}  // namespace

bool structurally_equal(const FeatureModel& a, const FeatureModel& b) {
  if (a.name != b.name || a.size() != b.size()) return false;
  const auto ra = a.root();
  const auto rb = b.root();
  if (ra.has_value() != rb.has_value()) return false;
  if (ra && a.name_of(*ra) != b.name_of(*rb)) return false;
  for (FeatureId ia = 0; ia < a.size(); ++ia) {
    const auto& fa = a.features[ia];
    const auto ib = b.find(fa.name);
    if (!ib) return false;
    const auto& fb = b.features[*ib];
    if (parent_name(a, fa) != parent_name(b, fb)) return false;
    if (fa.variation != fb.variation) return false;
    if (fa.group.has_value() != fb.group.has_value()) return false;
    if (fa.group) {
      const auto& ga = a.groups[*fa.group];
      const auto& gb = b.groups[*fb.group];
      if (ga.kind != gb.kind) return false;
      if (names_of(a, ga.members) != names_of(b, gb.members)) return false;
    }
    if (names_of(a, a.children(ia)) != names_of(b, b.children(*ib))) return false;
  }
  if (a.groups.size() != b.groups.size()) return false;

  auto attribute_set = [](const FeatureModel& m) {
    std::set<std::string> out;
    for (const auto& attr : m.attributes) out.insert(attr.name);
    return out;
  };
  if (attribute_set(a) != attribute_set(b)) return false;

  if (a.constraints.size() != b.constraints.size()) return false;
  for (const auto& ca : a.constraints) {
    const auto* cb = b.constraint(ca.label);
    if (cb == nullptr || !(cb->formula == ca.formula)) return false;
  }
  return true;
}

}  // namespace fmselect
