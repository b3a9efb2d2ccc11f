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

#include "fmselect/adaptation.h"

#include <algorithm>
#include <set>

#include "fmselect/dsl.h"

namespace fmselect {

bool AssumptionDelta::empty() const {
  return !sample_size && !num_features && !prediction && !labeled && !text_data &&
         !known_categories && !few_features;
}

namespace {

std::string show(std::int64_t v) { return std::to_string(v); }
std::string show(bool v) { return v ? "true" : "false"; }
std::string show(Prediction v) { return std::string(to_string(v)); }
std::string show(const std::optional<bool>& v) { return v ? show(*v) : "null"; }

template <typename T>
void apply(const std::optional<Change<T>>& change, T& field, const char* name) {
  if (!change) return;
  if (!(change->old_value == field)) {
    throw StaleDelta(std::string("delta expects ") + name + " " + show(change->old_value) +
                     " but the assumptions have " + show(field));
  }
  field = change->new_value;
}

// The configuration a side of the report stands for.
Configuration head_configuration(const KnowledgeBase& kb, const ModelingAssumptions& a,
                                 const Recommendation& rec) {
  if (const auto* chain = std::get_if<RecommendationChain>(&rec)) {
    return as_configuration(kb, a, chain->steps.front().front());
  }
  return facts_configuration(kb, a, std::nullopt);
}

const Formula& condition_of(const NamedConstraint& c, const KnowledgeBase& kb) {
  for (const auto& rule : kb.category_rules()) {
    if (rule.label == c.label) return c.formula.lhs();
  }
  if (c.formula.kind() == Formula::Kind::kImplies) return c.formula.lhs();
  return c.formula;
}

std::set<std::string> technique_side(const Recommendation& rec) {
  std::set<std::string> out;
  if (const auto* chain = std::get_if<RecommendationChain>(&rec)) {
    out.emplace(to_string(chain->category));
    for (const auto& step : chain->steps) out.insert(step.begin(), step.end());
  }
  return out;
}

// Declaration order of the model.
std::vector<std::string> ordered(const KnowledgeBase& kb, const std::set<std::string>& names) {
  std::vector<FeatureId> ids;
  for (const auto& n : names) ids.push_back(kb.id(n));
  std::sort(ids.begin(), ids.end());
  std::vector<std::string> out;
  for (FeatureId id : ids) out.push_back(kb.model().name_of(id));
  return out;
}

}  // namespace

ModelingAssumptions apply_delta(const ModelingAssumptions& a, const AssumptionDelta& d) {
  if (d.empty()) throw InvalidArgument("assumption delta changes nothing");
  ModelingAssumptions out = a;
  apply(d.sample_size, out.sample_size, "sample_size");
  apply(d.num_features, out.num_features, "num_features");
  apply(d.prediction, out.prediction, "prediction");
  apply(d.labeled, out.labeled, "labeled");
  apply(d.text_data, out.text_data, "text_data");
  apply(d.known_categories, out.known_categories, "known_categories");
  apply(d.few_features, out.few_features, "few_features");
  check_assumptions(out);
  return out;
}

bool AdaptationReport::chains_identical() const {
  const auto* a = std::get_if<RecommendationChain>(&old_chain);
  const auto* b = std::get_if<RecommendationChain>(&new_chain);
  if (!a && !b) return true;
  if (!a || !b) return false;
  return a->category == b->category && a->steps == b->steps;
}

AdaptationReport reselect(const KnowledgeBase& kb, const ModelingAssumptions& a,
                          const AssumptionDelta& d) {
  AdaptationReport report{a, apply_delta(a, d), recommend(kb, a), {}, {}, {}};
  report.new_chain = recommend(kb, report.new_assumptions);

  const Configuration before = head_configuration(kb, a, report.old_chain);
  const Configuration after =
      head_configuration(kb, report.new_assumptions, report.new_chain);
  for (const auto& c : kb.model().constraints) {
    const Formula& condition = condition_of(c, kb);
    if (eval_formula(kb.model(), condition, before) !=
        eval_formula(kb.model(), condition, after)) {
      report.changed_constraints.push_back(c.label);
    }
  }
  std::sort(report.changed_constraints.begin(), report.changed_constraints.end(),
            [](const std::string& x, const std::string& y) { return label_less(x, y); });

  const auto old_side = technique_side(report.old_chain);
  const auto new_side = technique_side(report.new_chain);
  std::set<std::string> gained;
  std::set<std::string> lost;
  std::set_difference(new_side.begin(), new_side.end(), old_side.begin(), old_side.end(),
                      std::inserter(gained, gained.end()));
  std::set_difference(old_side.begin(), old_side.end(), new_side.begin(), new_side.end(),
                      std::inserter(lost, lost.end()));
  report.feature_diff = {ordered(kb, gained), ordered(kb, lost)};
  return report;
}

}  // namespace fmselect
