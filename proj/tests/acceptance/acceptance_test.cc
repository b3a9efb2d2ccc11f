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

// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// time against its budget. Exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cli.h"
#include "fmselect/adaptation.h"
#include "fmselect/dsl.h"
#include "fmselect/evaluation.h"
#include "fmselect/json_io.h"
#include "fmselect/knowledge_base.h"
#include "fmselect/recommender.h"
#include "oracle.h"
#include "random_model.h"

namespace fmselect {
namespace {

namespace fs = std::filesystem;
using Steps = std::vector<Step>;

const fs::path kSource = FMSELECT_SOURCE_DIR;

// Published metrics have three decimals; allow only float noise.
constexpr double kExactTolerance = 1e-9;

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string show(const Steps& steps) {
  std::string out;
  for (const auto& step : steps) {
    if (!out.empty()) out += " -> ";
    out += "[";
    for (std::size_t i = 0; i < step.size(); ++i) out += (i ? ", " : "") + step[i];
    out += "]";
  }
  return out;
}

Steps steps_of(const Recommendation& r) {
  const auto* chain = std::get_if<RecommendationChain>(&r);
  return chain ? chain->steps : Steps{};
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_ms;
  std::function<Outcome()> check;
};

Outcome case_study_chain() {
  std::ostringstream out, err;
  const int code = cli::run(std::vector<std::string>{"recommend", "--samples", "299", "--features",
                                                     "13", "--predict", "category", "--labeled",
                                                     "--format", "json"},
                            out, err);
  if (code != cli::kExitOk) return {false, "exit code " + std::to_string(code) + ": " + err.str()};
  const RecommendationChain chain = chain_from_json(parse_json(out.str()));
  const Steps want = {{"LinearSVC"}, {"KNeighborsClassifier"}, {"SVC", "EnsembleClassifiers"}};
  if (chain.category != TechniqueCategory::kClassification) {
    return {false, "category " + std::string(to_string(chain.category))};
  }
  if (chain.steps != want) return {false, "steps " + show(chain.steps)};
  if (out.str() != slurp(kSource / "tests/golden/recommend_case_study.json")) {
    return {false, "output differs from tests/golden/recommend_case_study.json"};
  }
  return {true, "Classification " + show(chain.steps) + ", golden file matches"};
}

Outcome evaluation_gate() {
  const MetricsReport ours = report_from_json(parse_json(slurp(kSource / "data/linearsvc_report.json")));
  if (ours.f1 != 0.780 || ours.mcc != 0.672 || ours.bacc != 0.848 || ours.sensitivity != 0.854 ||
      ours.specificity != 0.842) {
    return {false, "fixture values differ from the published report"};
  }
  const auto baselines = baselines_from_json(parse_json(slurp(kSource / "data/baselines.json")));
  const RecommendationChain chain = std::get<RecommendationChain>(
      recommend(load_knowledge_base(), {299, 13, Prediction::kCategory, true, false, {}, false}));
  Session session = new_session(chain, make_criterion(Metric::kF1, 0.77));
  const Decision d = submit_metrics(session, ours);
  if (d != Decision(Accepted{"LinearSVC"})) return {false, "decision " + describe(d)};

  const Ranking r = compare_baselines(ours, baselines);
  if (r.rank_of_submitted() != 1) return {false, "submitted ranked " + std::to_string(r.rank_of_submitted())};
  double delta_lr = NAN, delta_rf = NAN;
  for (const auto& e : r.entries) {
    if (e.report.technique == "LogisticRegression" && e.report.f1 == 0.714) delta_lr = e.delta_f1;
    if (e.report.technique == "RandomForest" && e.report.f1 == 0.746) delta_rf = e.delta_f1;
  }
  if (!(std::abs(delta_lr - 0.066) <= kExactTolerance) ||
      !(std::abs(delta_rf - 0.034) <= kExactTolerance)) {
    return {false, "deltas " + std::to_string(delta_lr) + "/" + std::to_string(delta_rf)};
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "Accepted LinearSVC; rank 1 of %zu; delta f1 %+.3f vs LogisticRegression, %+.3f "
                "vs RandomForest",
                r.entries.size(), delta_lr, delta_rf);
  return {true, buf};
}

Outcome adaptation_scenarios() {
  const KnowledgeBase kb = load_knowledge_base();
  const ModelingAssumptions a =
      assumptions_from_json(parse_json(slurp(kSource / "data/case_study_assumptions.json")));
  const AdaptationReport more =
      reselect(kb, a, delta_from_json(parse_json(slurp(kSource / "data/delta_samples_150000.json"))));
  const Steps old_steps = steps_of(more.old_chain);
  const Steps new_steps = steps_of(more.new_chain);
  if (old_steps.empty() || old_steps.front() != Step{"LinearSVC"}) {
    return {false, "old head " + show(old_steps)};
  }
  if (new_steps.empty() || new_steps.front() != Step{"SGDClassifier"}) {
    return {false, "head after 299->150000 is " + show(new_steps)};
  }
  const AdaptationReport quantity =
      reselect(kb, a, delta_from_json(parse_json(slurp(kSource / "data/delta_predict_quantity.json"))));
  const Steps regression = steps_of(quantity.new_chain);
  if (regression != Steps{{"Lasso", "ElasticNet"}}) {
    return {false, "quantity prediction gives " + show(regression)};
  }
  return {true, "299->150000 head SGDClassifier; category->quantity " + show(regression)};
}

Outcome boundary_table() {
  const KnowledgeBase kb = load_knowledge_base();
  struct Row {
    std::int64_t n;
    ModelingAssumptions a;
    std::variant<Steps, NoRecommendation::Reason> want;
  };
  auto classification = [](std::int64_t n) {
    return ModelingAssumptions{n, 13, Prediction::kCategory, true, false, {}, false};
  };
  auto clustering = [](std::int64_t n, bool known) {
    return ModelingAssumptions{n, 13, Prediction::kCategory, false, false, known, false};
  };
  const Steps small_cls = {{"LinearSVC"}, {"KNeighborsClassifier"}, {"SVC", "EnsembleClassifiers"}};
  const Steps big_cls = {{"SGDClassifier"}, {"KernelApproximation"}};
  const Steps small_km = {{"KMeans"}, {"SpectralClustering", "GMM"}};
  const Steps big_km = {{"MiniBatchKMeans"}};
  const auto more_data = NoRecommendation::Reason::kMoreDataNeeded;
  std::vector<Row> rows;
  for (std::int64_t n : {50, 51, 9999, 10000, 99999, 100000}) {
    rows.push_back({n, classification(n),
                    n <= 50 ? decltype(Row::want)(more_data)
                            : decltype(Row::want)(n >= 100000 ? big_cls : small_cls)});
    rows.push_back({n, clustering(n, true),
                    n <= 50 ? decltype(Row::want)(more_data)
                            : decltype(Row::want)(n >= 10000 ? big_km : small_km)});
  }
  for (const Row& row : rows) {
    const Recommendation r = recommend(kb, row.a);
    if (const auto* steps = std::get_if<Steps>(&row.want)) {
      if (steps_of(r) != *steps) {
        return {false, "samples " + std::to_string(row.n) + " gave " + show(steps_of(r))};
      }
    } else {
      const auto* none = std::get_if<NoRecommendation>(&r);
      if (!none || none->reason != std::get<NoRecommendation::Reason>(row.want)) {
        return {false, "samples " + std::to_string(row.n) + " should give no recommendation"};
      }
    }
  }
  return {true, std::to_string(rows.size()) +
                    " rows: 50 none, 51 category, 99999/100000 LinearSVC/SGDClassifier, "
                    "9999/10000 KMeans/MiniBatchKMeans"};
}

Outcome oracle_equivalence() {
  constexpr std::uint64_t kModels = 220;
  std::size_t largest = 0;
  for (std::uint64_t seed = 1; seed <= kModels; ++seed) {
    std::mt19937_64 rng(0xacce97 + seed);
    testing::RandomModelOptions options;
    // One model in five is drawn from the top of the size range.
    options.min_features = seed % 5 == 0 ? 14 : 1;
    options.max_features = seed % 5 == 0 ? 20 : 16;
    options.max_constraints = 4;
    const FeatureModel model = testing::random_model(rng, options);
    if (model.size() > 20 || model.constraints.size() > 4) {
      return {false, "seed " + std::to_string(seed) + " generated a model outside the bounds"};
    }
    largest = std::max(largest, model.size());
    const auto problems =
        testing::compare_with_oracle(model, testing::random_valuation(rng, model), rng);
    if (!problems.empty()) return {false, "seed " + std::to_string(seed) + ": " + problems.front()};
  }
  return {true, std::to_string(kModels) + " models up to " + std::to_string(largest) +
                    " features agree on enumeration, validity, propagation and completion"};
}

Outcome dsl_round_trip() {
  constexpr std::uint64_t kModels = 200;
  for (std::uint64_t seed = 1; seed <= kModels; ++seed) {
    std::mt19937_64 rng(0xd51 + seed);
    testing::RandomModelOptions options;
    options.max_features = 20;
    const FeatureModel model = testing::random_model(rng, options);
    const std::string text = serialize_model(model);
    const FeatureModel parsed = parse_model(text);
    if (!structurally_equal(model, parsed)) return {false, "seed " + std::to_string(seed) + " differs"};
    if (serialize_model(parsed) != text || serialize_model(model) != text) {
      return {false, "seed " + std::to_string(seed) + " is not byte-stable"};
    }
  }
  const FeatureModel kb = parse_model(slurp(kSource / "data/sklearn.fm"));
  const std::string text = serialize_model(kb);
  const FeatureModel again = parse_model(text);
  if (!structurally_equal(kb, again) || serialize_model(again) != text) {
    return {false, "sklearn.fm does not round-trip"};
  }
  return {true, std::to_string(kModels) + " random models and sklearn.fm"};
}

Outcome kb_self_check() {
  const KnowledgeBase kb = load_knowledge_base();
  const CheckReport report = self_check(kb);
  if (!report.passed()) {
    const auto& f = report.failures.front();
    return {false, f.check + ": " + f.subject + ": " + f.detail};
  }
  std::vector<std::string> labels;
  for (const auto& c : kb.model().constraints) labels.push_back(c.label);
  if (labels != expected_constraint_labels()) return {false, "constraint labels differ"};
  return {true, std::to_string(labels.size()) + " labels C1.1-C6.5 resolve, 4 categories derivable, "
                    "fallback graph acyclic"};
}

}  // namespace
}  // namespace fmselect

int main() {
  using namespace fmselect;
  const std::vector<Criterion> criteria = {
      {"case-study chain reproduction", 1000, case_study_chain},
      {"evaluation gate against published baselines", 1000, evaluation_gate},
      {"adaptation scenarios", 1000, adaptation_scenarios},
      {"sample-size boundary table", 1000, boundary_table},
      {"constraint engine matches brute-force oracle", 30000, oracle_equivalence},
      {"DSL round trip", 1000, dsl_round_trip},
      {"knowledge base self-check", 1000, kb_self_check},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && ms > c.budget_ms) {
      o.pass = false;
      o.detail += "; over time budget";
    }
    failures += !o.pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.0f ms of %.0f ms", ms, c.budget_ms);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.name << "  (" << timing << ")  "
              << o.detail << "\n";
  }
  return failures == 0 ? 0 : 1;
}
