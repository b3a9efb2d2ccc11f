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

#include "fmselect/recommender.h"

#include <algorithm>

#include "fmselect/analysis.h"

namespace fmselect {

std::string_view to_string(Prediction prediction) {
  switch (prediction) {
    case Prediction::kCategory:
      return "category";
    case Prediction::kQuantity:
      return "quantity";
    case Prediction::kStructure:
      return "structure";
    case Prediction::kNone:
      return "none";
  }
  return "?";
}

std::optional<Prediction> parse_prediction(std::string_view text) {
  for (auto p : {Prediction::kCategory, Prediction::kQuantity, Prediction::kStructure,
                 Prediction::kNone}) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

std::string_view to_string(NoRecommendation::Reason reason) {
  switch (reason) {
    case NoRecommendation::Reason::kMoreDataNeeded:
      return "MoreDataNeeded";
    case NoRecommendation::Reason::kToughLuck:
      return "ToughLuck";
    case NoRecommendation::Reason::kIndeterminateAssumptions:
      return "IndeterminateAssumptions";
  }
  return "?";
}

void check_assumptions(const ModelingAssumptions& a) {
  if (a.sample_size < 0) throw InvalidArgument("sample_size must be >= 0");
  if (a.num_features < 0) throw InvalidArgument("num_features must be >= 0");
}

bool RecommendationChain::contains(std::string_view technique) const {
  return std::any_of(steps.begin(), steps.end(), [&](const Step& s) {
    return std::find(s.begin(), s.end(), technique) != s.end();
  });
}

namespace {

AttributeValuation attributes_of(const ModelingAssumptions& a) {
  return {{std::string(kb::kSamplesize), a.sample_size},
          {std::string(kb::kNumFeatures), a.num_features}};
}

struct Tracer {
  const KnowledgeBase& kb;
  const Configuration& facts;
  std::vector<TraceEntry>& trace;

  bool eval(const std::string& label, const Formula& f) {
    const bool value = eval_formula(kb.model(), f, facts);
    TraceEntry entry{label, to_instantiated_string(f, facts.attributes), value};
    if (std::find(trace.begin(), trace.end(), entry) == trace.end()) {
      trace.push_back(std::move(entry));
    }
    return value;
  }
};

std::string join_labels(const std::vector<std::string>& labels) {
  std::string out;
  for (const auto& l : labels) out += (out.empty() ? "" : ", ") + l;
  return out;
}

CategoryDecision classify(const KnowledgeBase& kb, const ModelingAssumptions& a,
                          std::vector<TraceEntry>& trace) {
  check_assumptions(a);
  const Configuration facts = facts_configuration(kb, a, std::nullopt);
  Tracer tracer{kb, facts, trace};
  std::optional<TechniqueCategory> found;
  std::vector<std::string> labels;
  for (const auto& rule : kb.category_rules()) {
    labels.push_back(rule.label);
    if (tracer.eval(rule.label, rule.condition) && !found) found = rule.category;
  }
  if (found) return *found;
  NoRecommendation none;
  if (a.sample_size <= 50) {
    none.reason = NoRecommendation::Reason::kMoreDataNeeded;
    none.detail = "more data needed: Samplesize " + std::to_string(a.sample_size) +
                  " is not above 50, so none of " + join_labels(labels) + " holds";
  } else {
    none.reason = NoRecommendation::Reason::kToughLuck;
    none.detail = "no technique category applies to prediction '" +
                  std::string(to_string(a.prediction)) + "': none of " +
                  join_labels(labels) + " holds";
  }
  none.trace = trace;
  return none;
}

// Techniques reachable from `current` through edges whose guard holds,
// excluding those already on the chain, in declaration order.
Step next_step(const KnowledgeBase& kb, const Step& current,
               const std::vector<Step>& chain, Tracer& tracer) {
  std::vector<FeatureId> ids;
  for (const auto& edge : kb.fallback_edges()) {
    if (std::find(current.begin(), current.end(), edge.from) == current.end()) continue;
    if (!tracer.eval(edge.source, edge.guard)) continue;
    for (const auto& t : edge.to) {
      const bool on_chain = std::any_of(chain.begin(), chain.end(), [&](const Step& s) {
        return std::find(s.begin(), s.end(), t) != s.end();
      });
      if (!on_chain) ids.push_back(kb.id(t));
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  Step step;
  for (FeatureId id : ids) step.push_back(kb.model().name_of(id));
  return step;
}

}  // namespace

Configuration facts_configuration(const KnowledgeBase& kb, const ModelingAssumptions& a,
                                  std::optional<TechniqueCategory> category) {
  Configuration config;
  config.attributes = attributes_of(a);
  auto select = [&](std::string_view name) { config.selected.insert(kb.id(name)); };
  switch (a.prediction) {
    case Prediction::kCategory:
      select(kb::kPredictiontype);
      select(kb::kCategory);
      break;
    case Prediction::kQuantity:
      select(kb::kPredictiontype);
      select(kb::kQuantity);
      break;
    case Prediction::kStructure:
      select(kb::kPredictiontype);
      select(kb::kStructure);
      break;
    case Prediction::kNone:
      break;
  }
  if (a.labeled) select(kb::kLabeledData);
  if (a.text_data) select(kb::kTextdata);
  if (a.known_categories.value_or(false)) select(kb::kKnowncategories);
  if (a.few_features) select(kb::kFewfeatures);
  if (category) select(to_string(*category));
  return config;
}

CategoryDecision classify_problem(const KnowledgeBase& kb, const ModelingAssumptions& a) {
  std::vector<TraceEntry> trace;
  return classify(kb, a, trace);
}

Recommendation recommend(const KnowledgeBase& kb, const ModelingAssumptions& a) {
  std::vector<TraceEntry> trace;
  const CategoryDecision decision = classify(kb, a, trace);
  if (const auto* none = std::get_if<NoRecommendation>(&decision)) return *none;
  const TechniqueCategory category = std::get<TechniqueCategory>(decision);

  auto fail = [&](NoRecommendation::Reason reason, std::string detail) {
    return NoRecommendation{reason, std::move(detail), trace};
  };
  if (category == TechniqueCategory::kClustering && !a.known_categories) {
    std::string labels;
    for (const auto& c : kb.model().constraints) {
      if (!collect_symbols(c.formula).features.contains(kb::kKnowncategories)) continue;
      labels += (labels.empty() ? "" : ", ") + c.label;
    }
    return fail(NoRecommendation::Reason::kIndeterminateAssumptions,
                "unlabeled category prediction needs known_categories: " +
                    std::string(kb::kKnowncategories) + " decides " + labels);
  }

  const Configuration facts = facts_configuration(kb, a, category);
  Tracer tracer{kb, facts, trace};
  std::vector<std::string> violated;
  for (const auto& label : kb.assumption_rules()) {
    if (!tracer.eval(label, kb.model().constraint(label)->formula)) violated.push_back(label);
  }
  if (!violated.empty()) {
    return fail(NoRecommendation::Reason::kToughLuck,
                "assumptions violate " + join_labels(violated) + " for " +
                    std::string(to_string(category)));
  }

  RecommendationChain chain{category, {}, {}};
  std::vector<std::string> consulted;
  for (const auto& rule : kb.entry_rules()) {
    if (rule.category != category) continue;
    consulted.push_back(rule.label);
    if (tracer.eval(rule.label, rule.antecedent) && chain.steps.empty()) {
      chain.steps.push_back(rule.techniques);
    }
  }
  if (chain.steps.empty()) {
    return fail(NoRecommendation::Reason::kToughLuck,
                "no entry rule for " + std::string(to_string(category)) + " fires (" +
                    join_labels(consulted) + ")");
  }
  while (true) {
    Step step = next_step(kb, chain.steps.back(), chain.steps, tracer);
    if (step.empty()) break;
    chain.steps.push_back(std::move(step));
  }
  chain.trace = std::move(trace);
  return chain;
}

Configuration as_configuration(const KnowledgeBase& kb, const ModelingAssumptions& a,
                               std::string_view technique) {
  const Recommendation rec = recommend(kb, a);
  const auto* chain = std::get_if<RecommendationChain>(&rec);
  if (!chain) {
    throw NotRecommended("no chain for these assumptions: " +
                         std::get<NoRecommendation>(rec).detail);
  }
  if (!chain->contains(technique)) {
    throw NotRecommended("'" + std::string(technique) + "' is not on the " +
                         std::string(to_string(chain->category)) + " chain");
  }
  const FeatureModel& model = kb.model();
  const Configuration facts = facts_configuration(kb, a, chain->category);
  auto partial = PartialConfiguration::unknown(model, facts.attributes);
  for (auto name : {kb::kPredictiontype, kb::kCategory, kb::kQuantity, kb::kStructure,
                    kb::kLabeledData, kb::kTextdata, kb::kKnowncategories,
                    kb::kFewfeatures, kb::kNotWorking}) {
    const FeatureId id = kb.id(name);
    partial.assignments[id] =
        facts.is_selected(id) ? Assignment::kSelected : Assignment::kExcluded;
  }
  for (auto c : kAllCategories) {
    partial.set(model, to_string(c),
                c == chain->category ? Assignment::kSelected : Assignment::kExcluded);
  }
  partial.set(model, technique, Assignment::kSelected);
  auto config = complete(model, partial);
  if (!config) {
    throw Error("no valid configuration selects '" + std::string(technique) +
                "' under these assumptions");
  }
  return *config;
}

Configuration as_configuration(const KnowledgeBase& kb, const ModelingAssumptions& a,
                               FeatureId technique) {
  if (technique >= kb.model().size()) throw InvalidArgument("feature id out of range");
  return as_configuration(kb, a, kb.model().name_of(technique));
}

}  // namespace fmselect
