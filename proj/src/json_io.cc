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

#include "fmselect/json_io.h"

#include <cmath>
#include <set>

namespace fmselect {

namespace {

// Deltas are differences of 3-decimal values; round away the binary noise.
double tidy(double v) { return std::round(v * 1e9) / 1e9; }

const Json& field(const Json& json, const char* key) {
  if (!json.is_object()) throw InvalidArgument("expected a JSON object");
  auto it = json.find(key);
  if (it == json.end()) throw InvalidArgument(std::string("missing field '") + key + "'");
  return *it;
}

template <typename T>
T get(const Json& json, const char* key) {
  const Json& value = field(json, key);
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidArgument(std::string("field '") + key + "' has the wrong type");
  }
}

double get_number(const Json& json, const char* key) {
  const Json& value = field(json, key);
  if (!value.is_number()) {
    throw InvalidArgument(std::string("field '") + key + "' must be a number");
  }
  return value.get<double>();
}

std::int64_t get_count(const Json& json, const char* key) {
  const Json& value = field(json, key);
  if (!value.is_number_integer()) {
    throw InvalidArgument(std::string("field '") + key + "' must be an integer");
  }
  return value.get<std::int64_t>();
}

bool get_bool(const Json& json, const char* key) {
  const Json& value = field(json, key);
  if (!value.is_boolean()) {
    throw InvalidArgument(std::string("field '") + key + "' must be true or false");
  }
  return value.get<bool>();
}

void reject_unknown(const Json& json, std::initializer_list<const char*> known) {
  if (!json.is_object()) throw InvalidArgument("expected a JSON object");
  for (const auto& item : json.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) throw InvalidArgument("unknown field '" + item.key() + "'");
  }
}

Prediction prediction_from(const Json& value, const char* key) {
  if (!value.is_string()) {
    throw InvalidArgument(std::string("field '") + key + "' must be a string");
  }
  auto p = parse_prediction(value.get<std::string>());
  if (!p) {
    throw InvalidArgument(std::string("field '") + key +
                          "' must be category, quantity, structure or none");
  }
  return *p;
}

std::optional<bool> optional_bool_from(const Json& value, const char* key) {
  if (value.is_null()) return std::nullopt;
  if (!value.is_boolean()) {
    throw InvalidArgument(std::string("field '") + key + "' must be true, false or null");
  }
  return value.get<bool>();
}

Json optional_bool_json(const std::optional<bool>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json trace_json(const std::vector<TraceEntry>& trace) {
  Json out = Json::array();
  for (const auto& t : trace) {
    out.push_back(Json{{"label", t.label}, {"formula", t.formula}, {"value", t.value}});
  }
  return out;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

Json to_json(const RecommendationChain& chain) {
  Json steps = Json::array();
  for (const auto& s : chain.steps) steps.push_back(s);
  return Json{{"category", to_string(chain.category)},
              {"steps", steps},
              {"trace", trace_json(chain.trace)}};
}

Json to_json(const NoRecommendation& none) {
  return Json{{"reason", to_string(none.reason)},
              {"detail", none.detail},
              {"trace", trace_json(none.trace)}};
}

Json to_json(const Recommendation& recommendation) {
  return std::visit([](const auto& r) { return to_json(r); }, recommendation);
}

RecommendationChain chain_from_json(const Json& json) {
  RecommendationChain chain;
  const auto category = parse_category(get<std::string>(json, "category"));
  if (!category) throw InvalidArgument("field 'category' names no technique category");
  chain.category = *category;
  chain.steps = get<std::vector<Step>>(json, "steps");
  if (json.contains("trace")) {
    for (const auto& t : field(json, "trace")) {
      chain.trace.push_back({get<std::string>(t, "label"), get<std::string>(t, "formula"),
                             get_bool(t, "value")});
    }
  }
  return chain;
}

Json to_json(const MetricsReport& r) {
  return Json{{"technique", r.technique},     {"f1", r.f1},
              {"mcc", r.mcc},                 {"bacc", r.bacc},
              {"sensitivity", r.sensitivity}, {"specificity", r.specificity},
              {"provenance", r.provenance}};
}

MetricsReport report_from_json(const Json& json) {
  reject_unknown(json, {"technique", "f1", "mcc", "bacc", "sensitivity", "specificity",
                        "provenance"});
  MetricsReport r;
  r.technique = get<std::string>(json, "technique");
  r.f1 = get_number(json, "f1");
  r.mcc = get_number(json, "mcc");
  r.bacc = get_number(json, "bacc");
  r.sensitivity = get_number(json, "sensitivity");
  r.specificity = get_number(json, "specificity");
  if (json.contains("provenance")) r.provenance = get<std::string>(json, "provenance");
  check_report(r);
  return r;
}

std::vector<MetricsReport> baselines_from_json(const Json& json) {
  if (!json.is_array()) throw InvalidArgument("baselines must be a JSON array of reports");
  std::vector<MetricsReport> out;
  for (const auto& item : json) out.push_back(report_from_json(item));
  return out;
}

Json to_json(const ModelingAssumptions& a) {
  return Json{{"sample_size", a.sample_size},
              {"num_features", a.num_features},
              {"prediction", to_string(a.prediction)},
              {"labeled", a.labeled},
              {"text_data", a.text_data},
              {"known_categories", optional_bool_json(a.known_categories)},
              {"few_features", a.few_features}};
}

ModelingAssumptions assumptions_from_json(const Json& json) {
  reject_unknown(json, {"sample_size", "num_features", "prediction", "labeled",
                        "text_data", "known_categories", "few_features"});
  ModelingAssumptions a;
  a.sample_size = get_count(json, "sample_size");
  a.num_features = get_count(json, "num_features");
  a.prediction = prediction_from(field(json, "prediction"), "prediction");
  a.labeled = json.contains("labeled") && get_bool(json, "labeled");
  a.text_data = json.contains("text_data") && get_bool(json, "text_data");
  if (json.contains("known_categories")) {
    a.known_categories = optional_bool_from(json.at("known_categories"), "known_categories");
  }
  a.few_features = json.contains("few_features") && get_bool(json, "few_features");
  check_assumptions(a);
  return a;
}

Json to_json(const AssumptionDelta& d) {
  Json out = Json::object();
  auto put = [&](const char* key, const auto& change, auto convert) {
    if (change) {
      out[key] = Json{{"old", convert(change->old_value)}, {"new", convert(change->new_value)}};
    }
  };
  auto same = [](const auto& v) { return Json(v); };
  put("sample_size", d.sample_size, same);
  put("num_features", d.num_features, same);
  put("prediction", d.prediction, [](Prediction p) { return Json(to_string(p)); });
  put("labeled", d.labeled, same);
  put("text_data", d.text_data, same);
  put("known_categories", d.known_categories, optional_bool_json);
  put("few_features", d.few_features, same);
  return out;
}

AssumptionDelta delta_from_json(const Json& json) {
  reject_unknown(json, {"sample_size", "num_features", "prediction", "labeled",
                        "text_data", "known_categories", "few_features"});
  AssumptionDelta d;
  for (const auto& item : json.items()) {
    const std::string& key = item.key();
    const Json& change = item.value();
    reject_unknown(change, {"old", "new"});
    const Json& o = field(change, "old");
    const Json& n = field(change, "new");
    auto count = [&](const Json& v) {
      if (!v.is_number_integer()) throw InvalidArgument("field '" + key + "' must be an integer");
      return v.get<std::int64_t>();
    };
    auto flag = [&](const Json& v) {
      if (!v.is_boolean()) throw InvalidArgument("field '" + key + "' must be true or false");
      return v.get<bool>();
    };
    if (key == "sample_size") d.sample_size = Change<std::int64_t>{count(o), count(n)};
    if (key == "num_features") d.num_features = Change<std::int64_t>{count(o), count(n)};
    if (key == "prediction") {
      d.prediction = Change<Prediction>{prediction_from(o, "prediction"),
                                        prediction_from(n, "prediction")};
    }
    if (key == "labeled") d.labeled = Change<bool>{flag(o), flag(n)};
    if (key == "text_data") d.text_data = Change<bool>{flag(o), flag(n)};
    if (key == "few_features") d.few_features = Change<bool>{flag(o), flag(n)};
    if (key == "known_categories") {
      d.known_categories = Change<std::optional<bool>>{
          optional_bool_from(o, "known_categories"), optional_bool_from(n, "known_categories")};
    }
  }
  return d;
}

Json to_json(const AdaptationReport& r) {
  return Json{{"old_assumptions", to_json(r.old_assumptions)},
              {"new_assumptions", to_json(r.new_assumptions)},
              {"old_chain", to_json(r.old_chain)},
              {"new_chain", to_json(r.new_chain)},
              {"changed_constraints", r.changed_constraints},
              {"feature_diff",
               Json{{"selected", r.feature_diff.selected},
                    {"deselected", r.feature_diff.deselected}}},
              {"chains_identical", r.chains_identical()}};
}

Json to_json(const Decision& decision) {
  if (const auto* a = std::get_if<Accepted>(&decision)) {
    return Json{{"decision", "Accepted"}, {"technique", a->technique}};
  }
  if (const auto* n = std::get_if<NotWorking>(&decision)) {
    return Json{{"decision", "NotWorking"},
                {"technique", n->technique},
                {"candidates", n->candidates}};
  }
  return Json{{"decision", "Exhausted"},
              {"technique", std::get<Exhausted>(decision).technique}};
}

Json to_json(const Ranking& ranking) {
  Json rows = Json::array();
  for (const auto& e : ranking.entries) {
    rows.push_back(Json{{"rank", e.rank},
                        {"technique", e.report.technique},
                        {"submitted", e.submitted},
                        {"f1", e.report.f1},
                        {"mcc", e.report.mcc},
                        {"bacc", e.report.bacc},
                        {"sensitivity", e.report.sensitivity},
                        {"specificity", e.report.specificity},
                        {"delta",
                         Json{{"f1", tidy(e.delta_f1)},
                              {"mcc", tidy(e.delta_mcc)},
                              {"bacc", tidy(e.delta_bacc)},
                              {"sensitivity", tidy(e.delta_sensitivity)},
                              {"specificity", tidy(e.delta_specificity)}}},
                        {"provenance", e.report.provenance}});
  }
  return rows;
}

Json to_json(const CheckReport& report) {
  Json failures = Json::array();
  for (const auto& f : report.failures) {
    failures.push_back(Json{{"check", f.check}, {"subject", f.subject}, {"detail", f.detail}});
  }
  return Json{{"passed", report.passed()},
              {"checks", report.checks},
              {"failures", failures},
              {"notes", report.notes}};
}

}  // namespace fmselect
