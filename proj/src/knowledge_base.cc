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

#include "fmselect/knowledge_base.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include <json.hpp>

#include "embedded_assets.h"
#include "fmselect/analysis.h"
#include "fmselect/dsl.h"

namespace fmselect {

std::string_view to_string(TechniqueCategory category) {
  switch (category) {
    case TechniqueCategory::kClassification:
      return "Classification";
    case TechniqueCategory::kRegression:
      return "Regression";
    case TechniqueCategory::kClustering:
      return "Clustering";
    case TechniqueCategory::kDimensionalityReduction:
      return "DimensionalityReduction";
  }
  return "?";
}

std::optional<TechniqueCategory> parse_category(std::string_view name) {
  for (auto c : kAllCategories) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

namespace {

bool is_descendant(const FeatureModel& model, FeatureId id, FeatureId ancestor) {
  std::optional<FeatureId> cur = model.features[id].parent;
  while (cur) {
    if (*cur == ancestor) return true;
    cur = model.features[*cur].parent;
  }
  return false;
}

FeatureId require_feature(const FeatureModel& model, std::string_view name) {
  auto id = model.find(name);
  if (!id) {
    throw KnowledgeBaseError("knowledge base lacks feature '" + std::string(name) + "'");
  }
  return *id;
}

// Collects the atoms of a disjunction tree; false if any operand is not a
// plain feature literal.
bool disjunction_atoms(const Formula& f, std::vector<std::string>& out) {
  if (f.kind() == Formula::Kind::kFeature) {
    out.push_back(f.symbol());
    return true;
  }
  if (f.kind() != Formula::Kind::kOr) return false;
  return disjunction_atoms(f.lhs(), out) && disjunction_atoms(f.rhs(), out);
}

std::size_t index(TechniqueCategory c) { return static_cast<std::size_t>(c); }

}  // namespace

KnowledgeBase::KnowledgeBase(FeatureModel model, std::vector<FallbackEdge> edges)
    : model_(std::move(model)), edges_(std::move(edges)) {
  const auto report = validate_model(model_);
  if (!report.empty()) {
    std::string message = "knowledge base model is not well formed:";
    for (const auto& v : report) message += "\n  " + v.message;
    throw KnowledgeBaseError(message);
  }
  const FeatureId techniques_root = require_feature(model_, kb::kTechniques);
  const FeatureId assumptions_root = require_feature(model_, kb::kAssumptions);
  for (FeatureId id = 0; id < model_.size(); ++id) {
    if (is_descendant(model_, id, techniques_root)) technique_features_.push_back(id);
    if (is_descendant(model_, id, assumptions_root)) assumption_features_.push_back(id);
  }
  std::set<FeatureId> category_ids;
  for (auto c : kAllCategories) {
    const FeatureId cat = require_feature(model_, to_string(c));
    if (model_.features[cat].parent != techniques_root) {
      throw KnowledgeBaseError("category '" + std::string(to_string(c)) +
                               "' is not a child of " + std::string(kb::kTechniques));
    }
    category_ids.insert(cat);
    for (FeatureId id : technique_features_) {
      if (is_descendant(model_, id, cat) && model_.children(id).empty()) {
        techniques_[index(c)].push_back(model_.name_of(id));
      }
    }
  }
  for (auto name : {kb::kPredictiontype, kb::kCategory, kb::kQuantity, kb::kStructure,
                    kb::kLabeledData, kb::kTextdata, kb::kKnowncategories,
                    kb::kFewfeatures, kb::kNotWorking}) {
    const FeatureId id = require_feature(model_, name);
    if (!is_descendant(model_, id, assumptions_root)) {
      throw KnowledgeBaseError("'" + std::string(name) + "' is not under " +
                               std::string(kb::kAssumptions));
    }
  }
  for (auto name : {kb::kSamplesize, kb::kNumFeatures}) {
    if (!model_.has_attribute(name)) {
      throw KnowledgeBaseError("knowledge base lacks attribute '" + std::string(name) + "'");
    }
  }

  for (const auto& e : edges_) {
    if (e.to.empty()) {
      throw KnowledgeBaseError("fallback edge from " + e.from + " has no targets");
    }
    std::vector<std::string> named = e.to;
    named.push_back(e.from);
    for (const auto& t : named) {
      if (!is_technique(t)) {
        throw KnowledgeBaseError("fallback edge " + e.source + " names '" + t +
                                 "', which is not a technique leaf");
      }
    }
    const auto symbols = collect_symbols(e.guard);
    for (const auto& f : symbols.features) {
      if (!model_.find(f)) {
        throw KnowledgeBaseError("fallback guard of " + e.source +
                                 " references unknown feature '" + f + "'");
      }
    }
    for (const auto& a : symbols.attributes) {
      if (!model_.has_attribute(a)) {
        throw KnowledgeBaseError("fallback guard of " + e.source +
                                 " references unknown attribute '" + a + "'");
      }
    }
  }

  // Sort the constraints into the rule families the recommender uses.
  const std::set<FeatureId> assumption_set(assumption_features_.begin(),
                                           assumption_features_.end());
  auto only_assumptions_and_categories = [&](const Formula& f,
                                             std::vector<TechniqueCategory>& cats) {
    for (const auto& name : collect_symbols(f).features) {
      const FeatureId id = *model_.find(name);
      if (auto c = parse_category(name); c && category_ids.contains(id)) {
        cats.push_back(*c);
      } else if (!assumption_set.contains(id)) {
        return false;
      }
    }
    return true;
  };
  for (const auto& nc : model_.constraints) {
    const Formula& f = nc.formula;
    std::vector<TechniqueCategory> cats;
    if (f.kind() == Formula::Kind::kIff && f.rhs().kind() == Formula::Kind::kFeature) {
      auto c = parse_category(f.rhs().symbol());
      if (c && only_assumptions_and_categories(f.lhs(), cats) && cats.empty()) {
        category_rules_.push_back({nc.label, *c, f.lhs()});
        continue;
      }
    }
    cats.clear();
    if (f.kind() == Formula::Kind::kImplies &&
        only_assumptions_and_categories(f.lhs(), cats) && cats.size() == 1) {
      std::vector<std::string> atoms;
      const auto& own = techniques_[index(cats[0])];
      if (disjunction_atoms(f.rhs(), atoms) &&
          std::all_of(atoms.begin(), atoms.end(), [&](const std::string& a) {
            return std::find(own.begin(), own.end(), a) != own.end();
          })) {
        // Alternatives in declaration order.
        std::vector<std::string> ordered;
        for (const auto& t : own) {
          if (std::find(atoms.begin(), atoms.end(), t) != atoms.end()) ordered.push_back(t);
        }
        entry_rules_.push_back({nc.label, cats[0], f.lhs(), std::move(ordered)});
        continue;
      }
    }
    cats.clear();
    if (only_assumptions_and_categories(f, cats)) assumption_rules_.push_back(nc.label);
  }
}

const std::vector<std::string>& KnowledgeBase::techniques(TechniqueCategory c) const {
  return techniques_[index(c)];
}

std::optional<TechniqueCategory> KnowledgeBase::category_of(std::string_view technique) const {
  for (auto c : kAllCategories) {
    const auto& list = techniques_[index(c)];
    if (std::find(list.begin(), list.end(), technique) != list.end()) return c;
  }
  return std::nullopt;
}

bool KnowledgeBase::is_technique(std::string_view name) const {
  return category_of(name).has_value();
}

FeatureId KnowledgeBase::id(std::string_view feature) const {
  auto id = model_.find(feature);
  if (!id) throw InvalidArgument("unknown feature '" + std::string(feature) + "'");
  return *id;
}

KnowledgeBase KnowledgeBase::from_sources(std::string_view model_text,
                                          std::string_view fallbacks_json) {
  FeatureModel model;
  try {
    model = parse_model(model_text);
  } catch (const ParseError& e) {
    throw KnowledgeBaseError(std::string("knowledge base model: ") + e.what());
  }
  std::vector<FallbackEdge> edges;
  try {
    const auto doc = nlohmann::json::parse(fallbacks_json);
    for (const auto& item : doc.at("edges")) {
      FallbackEdge edge{item.at("from").get<std::string>(),
                        parse_formula(item.at("guard").get<std::string>()),
                        item.at("to").get<std::vector<std::string>>(),
                        item.at("source").get<std::string>()};
      edges.push_back(std::move(edge));
    }
  } catch (const nlohmann::json::exception& e) {
    throw KnowledgeBaseError(std::string("fallback edges: ") + e.what());
  } catch (const ParseError& e) {
    throw KnowledgeBaseError(std::string("fallback guard: ") + e.what());
  }
  return KnowledgeBase(std::move(model), std::move(edges));
}

std::string_view embedded_model_text() { return internal::kSklearnModel; }
std::string_view embedded_fallbacks_text() { return internal::kSklearnFallbacks; }
std::string_view embedded_baselines_text() { return internal::kBaselines; }

KnowledgeBase load_knowledge_base() {
  return KnowledgeBase::from_sources(embedded_model_text(), embedded_fallbacks_text());
}

std::vector<std::string> expected_constraint_labels() {
  std::vector<std::string> labels;
  const std::array<int, 6> counts = {1, 4, 4, 4, 6, 5};
  for (std::size_t family = 0; family < counts.size(); ++family) {
    for (int i = 1; i <= counts[family]; ++i) {
      labels.push_back("C" + std::to_string(family + 1) + "." + std::to_string(i));
    }
  }
  return labels;
}

namespace {

// The knowledge base model with the category alternative group dissolved:
// categories become independent optional features, so only the category
// rules can force one.
FeatureModel relax_categories(const KnowledgeBase& kb) {
  FeatureModel model = kb.model();
  const FeatureId techniques_root = *model.find(kb::kTechniques);
  std::optional<std::size_t> dropped;
  for (std::size_t g = 0; g < model.groups.size(); ++g) {
    if (model.groups[g].parent == techniques_root) dropped = g;
  }
  if (!dropped) return model;
  for (auto& f : model.features) {
    if (!f.group) continue;
    if (*f.group == *dropped) {
      f.group.reset();
      f.variation = Variation::kOptional;
    } else if (*f.group > *dropped) {
      --*f.group;
    }
  }
  model.groups.erase(model.groups.begin() + static_cast<std::ptrdiff_t>(*dropped));
  return model;
}

enum class Prediction { kCategory, kQuantity, kStructure, kNone };

struct Valuation {
  std::int64_t samples;
  Prediction prediction;
  bool labeled, text, known, few;
};

std::string describe(const Valuation& v) {
  static constexpr std::array<std::string_view, 4> kPrediction = {
      "Category", "Quantity", "Structure", "none"};
  std::string out = "Samplesize=" + std::to_string(v.samples) +
                    " prediction=" + std::string(kPrediction[static_cast<int>(v.prediction)]);
  if (v.labeled) out += " LabeledData";
  if (v.text) out += " Textdata";
  if (v.known) out += " Knowncategories";
  if (v.few) out += " Fewfeatures";
  return out;
}

std::vector<Valuation> representative_valuations() {
  std::vector<Valuation> out;
  for (std::int64_t samples : {60, 5000, 20000, 150000}) {
    for (auto p : {Prediction::kCategory, Prediction::kQuantity, Prediction::kStructure,
                   Prediction::kNone}) {
      for (int flags = 0; flags < 16; ++flags) {
        out.push_back({samples, p, (flags & 1) != 0, (flags & 2) != 0, (flags & 4) != 0,
                       (flags & 8) != 0});
      }
    }
  }
  return out;
}

PartialConfiguration valuation_partial(const FeatureModel& model, const Valuation& v) {
  auto partial = PartialConfiguration::unknown(
      model, {{std::string(kb::kSamplesize), v.samples},
              {std::string(kb::kNumFeatures), 13}});
  auto set = [&](std::string_view name, bool on) {
    partial.set(model, name, on ? Assignment::kSelected : Assignment::kExcluded);
  };
  set(kb::kPredictiontype, v.prediction != Prediction::kNone);
  set(kb::kCategory, v.prediction == Prediction::kCategory);
  set(kb::kQuantity, v.prediction == Prediction::kQuantity);
  set(kb::kStructure, v.prediction == Prediction::kStructure);
  set(kb::kLabeledData, v.labeled);
  set(kb::kTextdata, v.text);
  set(kb::kKnowncategories, v.known);
  set(kb::kFewfeatures, v.few);
  set(kb::kNotWorking, false);
  return partial;
}

void check_symbols(const KnowledgeBase& kb, CheckReport& report) {
  report.checks.push_back("symbols");
  const auto& model = kb.model();
  auto check = [&](const std::string& subject, const Formula& f) {
    const auto symbols = collect_symbols(f);
    for (const auto& name : symbols.features) {
      if (!model.find(name)) {
        report.failures.push_back({"symbols", subject, "unknown feature '" + name + "'"});
      }
    }
    for (const auto& name : symbols.attributes) {
      if (!model.has_attribute(name)) {
        report.failures.push_back({"symbols", subject, "unknown attribute '" + name + "'"});
      }
    }
  };
  for (const auto& c : model.constraints) check(c.label, c.formula);
  for (const auto& e : kb.fallback_edges()) check("fallback " + e.from, e.guard);

  report.checks.push_back("labels");
  std::set<std::string, std::less<>> present;
  for (const auto& c : model.constraints) present.insert(c.label);
  const auto expected = expected_constraint_labels();
  for (const auto& label : expected) {
    if (!present.contains(label)) {
      report.failures.push_back({"labels", label, "constraint missing"});
    }
  }
  for (const auto& label : present) {
    if (std::find(expected.begin(), expected.end(), label) == expected.end()) {
      report.failures.push_back({"labels", label, "unexpected constraint label"});
    }
  }
}

void check_derivability(const KnowledgeBase& kb, CheckReport& report) {
  report.checks.push_back("derivability");
  const FeatureModel relaxed = relax_categories(kb);
  std::array<std::optional<Valuation>, 4> witness;
  for (const auto& v : representative_valuations()) {
    const auto partial = valuation_partial(relaxed, v);
    if (!is_satisfiable(relaxed, partial)) continue;
    for (auto c : kAllCategories) {
      auto& slot = witness[static_cast<std::size_t>(c)];
      if (slot) continue;
      auto without = partial;
      without.set(relaxed, to_string(c), Assignment::kExcluded);
      if (!is_satisfiable(relaxed, without)) slot = v;
    }
  }
  for (auto c : kAllCategories) {
    const auto& slot = witness[static_cast<std::size_t>(c)];
    if (!slot) {
      report.failures.push_back({"derivability", std::string(to_string(c)),
                                 "no representative assumption valuation selects it"});
    } else {
      report.notes.push_back(std::string(to_string(c)) + " is selected by " + describe(*slot));
    }
  }
}

void check_acyclic(const KnowledgeBase& kb, CheckReport& report) {
  report.checks.push_back("acyclic");
  for (auto c : kAllCategories) {
    std::map<std::string, std::vector<std::string>> next;
    for (const auto& e : kb.fallback_edges()) {
      if (kb.category_of(e.from) != c) continue;
      auto& out = next[e.from];
      out.insert(out.end(), e.to.begin(), e.to.end());
    }
    std::map<std::string, int> state;  // 1 on stack, 2 done
    std::vector<std::string> path;
    std::function<bool(const std::string&)> visit = [&](const std::string& node) {
      state[node] = 1;
      path.push_back(node);
      for (const auto& n : next[node]) {
        if (state[n] == 1) {
          path.push_back(n);
          return true;
        }
        if (state[n] == 0 && visit(n)) return true;
      }
      path.pop_back();
      state[node] = 2;
      return false;
    };
    for (const auto& t : kb.techniques(c)) {
      if (state[t] != 0) continue;
      if (visit(t)) {
        std::string cycle;
        for (const auto& p : path) cycle += (cycle.empty() ? "" : " -> ") + p;
        report.failures.push_back({"acyclic", std::string(to_string(c)),
                                   "fallback cycle " + cycle});
        break;
      }
    }
  }
}

void check_coverage(const KnowledgeBase& kb, CheckReport& report) {
  report.checks.push_back("coverage");
  std::set<std::string, std::less<>> mentioned;
  for (const auto& c : kb.model().constraints) {
    for (const auto& f : collect_symbols(c.formula).features) {
      if (kb.is_technique(f)) mentioned.insert(f);
    }
  }
  for (const auto& e : kb.fallback_edges()) {
    for (const auto& t : e.to) {
      if (!mentioned.contains(t)) {
        report.failures.push_back({"coverage", t,
                                   "fallback target of " + e.from +
                                       " occurs in no selection rule"});
      }
    }
  }
}

// The published form of C1.1 cannot hold together with the prediction type
// alternative group; report which categories it would rule out.
void note_prediction_rule(const KnowledgeBase& kb, CheckReport& report) {
  const auto* shipped = kb.model().constraint("C1.1");
  if (!shipped) return;
  const Formula published = Formula::iff(
      Formula::feature(std::string(kb::kCategory)),
      Formula::negate(Formula::conj(Formula::feature(std::string(kb::kQuantity)),
                                    Formula::feature(std::string(kb::kStructure)))));
  if (shipped->formula == published) {
    report.notes.push_back("C1.1 is shipped in its published form");
    return;
  }
  FeatureModel variant = kb.model();
  for (auto& c : variant.constraints) {
    if (c.label == "C1.1") c.formula = published;
  }
  std::vector<std::string> ruled_out;
  for (auto c : kAllCategories) {
    bool possible = false;
    for (std::int64_t samples : {60, 5000, 20000, 150000}) {
      auto partial = PartialConfiguration::unknown(
          variant, {{std::string(kb::kSamplesize), samples},
                    {std::string(kb::kNumFeatures), 13}});
      partial.set(variant, to_string(c), Assignment::kSelected);
      if (is_satisfiable(variant, partial)) {
        possible = true;
        break;
      }
    }
    if (!possible) ruled_out.emplace_back(to_string(c));
  }
  std::string note = "C1.1 is shipped as \"" + to_string(shipped->formula) +
                     "\"; the published form \"" + to_string(published) + "\"";
  if (ruled_out.empty()) {
    note += " admits every category";
  } else {
    note += " leaves no valid configuration for";
    for (const auto& r : ruled_out) note += " " + r;
  }
  report.notes.push_back(note);
}

void note_not_working_polarity(const KnowledgeBase& kb, CheckReport& report) {
  const Formula guard = Formula::negate(Formula::feature(std::string(kb::kNotWorking)));
  std::function<bool(const Formula&)> mentions = [&](const Formula& f) {
    if (f == guard) return true;
    if (f.kind() == Formula::Kind::kNot) return mentions(f.lhs());
    if (f.is_binary()) return mentions(f.lhs()) || mentions(f.rhs());
    return false;
  };
  std::vector<std::string> labels;
  for (const auto& c : kb.model().constraints) {
    if (mentions(c.formula)) labels.push_back(c.label);
  }
  std::sort(labels.begin(), labels.end(), [](const auto& a, const auto& b) {
    return label_less(a, b);
  });
  if (labels.empty()) return;
  std::string note = "rules guarded by \"not NotWorking\":";
  for (const auto& l : labels) note += " " + l;
  note += "; fallback edges follow the not-working branches instead";
  report.notes.push_back(note);
}

}  // namespace

CheckReport self_check(const KnowledgeBase& kb) {
  CheckReport report;
  check_symbols(kb, report);
  check_derivability(kb, report);
  check_acyclic(kb, report);
  check_coverage(kb, report);
  note_prediction_rule(kb, report);
  note_not_working_polarity(kb, report);
  return report;
}

}  // namespace fmselect
