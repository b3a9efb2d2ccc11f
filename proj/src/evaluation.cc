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

#include "fmselect/evaluation.h"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace fmselect {

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::kF1:
      return "f1";
    case Metric::kMcc:
      return "mcc";
    case Metric::kBacc:
      return "bacc";
    case Metric::kSensitivity:
      return "sensitivity";
    case Metric::kSpecificity:
      return "specificity";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view text) {
  for (auto m : {Metric::kF1, Metric::kMcc, Metric::kBacc, Metric::kSensitivity,
                 Metric::kSpecificity}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

namespace {

bool in_range(Metric metric, double v) {
  if (!std::isfinite(v)) return false;
  const double low = metric == Metric::kMcc ? -1.0 : 0.0;
  return v >= low && v <= 1.0;
}

}  // namespace

WorkingCriterion make_criterion(Metric metric, double threshold) {
  if (!in_range(metric, threshold)) {
    throw InvalidArgument("threshold " + std::to_string(threshold) +
                          " is outside the range of " + std::string(to_string(metric)));
  }
  return {metric, threshold};
}

WorkingCriterion parse_criterion(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument("criterion must look like metric:threshold, got '" +
                          std::string(text) + "'");
  }
  const auto metric = parse_metric(text.substr(0, colon));
  if (!metric) {
    throw InvalidArgument("unknown metric '" + std::string(text.substr(0, colon)) +
                          "'; expected f1, mcc, bacc, sensitivity or specificity");
  }
  const std::string_view number = text.substr(colon + 1);
  double threshold = 0.0;
  const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(),
                                         threshold);
  if (ec != std::errc() || ptr != number.data() + number.size() || number.empty()) {
    throw InvalidArgument("bad threshold '" + std::string(number) + "'");
  }
  return make_criterion(*metric, threshold);
}

double MetricsReport::value(Metric metric) const {
  switch (metric) {
    case Metric::kF1:
      return f1;
    case Metric::kMcc:
      return mcc;
    case Metric::kBacc:
      return bacc;
    case Metric::kSensitivity:
      return sensitivity;
    case Metric::kSpecificity:
      return specificity;
  }
  return 0.0;
}

void check_report(const MetricsReport& report) {
  if (report.technique.empty()) throw InvalidArgument("metrics report names no technique");
  for (auto m : {Metric::kF1, Metric::kMcc, Metric::kBacc, Metric::kSensitivity,
                 Metric::kSpecificity}) {
    if (!in_range(m, report.value(m))) {
      throw InvalidArgument("report for " + report.technique + ": " +
                            std::string(to_string(m)) + " " +
                            std::to_string(report.value(m)) + " is out of range");
    }
  }
}

std::string describe(const Decision& decision) {
  if (const auto* a = std::get_if<Accepted>(&decision)) return "Accepted " + a->technique;
  if (const auto* n = std::get_if<NotWorking>(&decision)) {
    std::string out = "NotWorking " + n->technique + "; next:";
    for (const auto& c : n->candidates) out += " " + c;
    return out;
  }
  return "Exhausted after " + std::get<Exhausted>(decision).technique;
}

Session::Session(RecommendationChain chain, WorkingCriterion criterion)
    : chain_(std::move(chain)), criterion_(criterion) {
  if (chain_.steps.empty()) throw EmptyChain("cannot evaluate an empty chain");
  for (const auto& step : chain_.steps) {
    if (step.empty()) throw EmptyChain("chain contains an empty step");
  }
  make_criterion(criterion_.metric, criterion_.threshold);
  candidates_ = chain_.steps.front();
}

Decision Session::submit(const MetricsReport& report) {
  if (finished_) throw SessionFinished("session has already finished");
  check_report(report);
  auto it = std::find(candidates_.begin(), candidates_.end(), report.technique);
  if (it == candidates_.end()) {
    std::string expected;
    for (const auto& c : candidates_) expected += (expected.empty() ? "" : ", ") + c;
    throw WrongTechnique("report names " + report.technique +
                         " but the current candidates are " + expected);
  }
  Decision decision;
  if (report.value(criterion_.metric) >= criterion_.threshold) {
    finished_ = true;
    candidates_.clear();
    decision = Accepted{report.technique};
  } else {
    candidates_.erase(it);
    if (candidates_.empty()) {
      ++cursor_;
      if (cursor_ < chain_.steps.size()) candidates_ = chain_.steps[cursor_];
    }
    if (candidates_.empty()) {
      finished_ = true;
      decision = Exhausted{report.technique};
    } else {
      decision = NotWorking{report.technique, candidates_};
    }
  }
  history_.emplace_back(report, decision);
  return decision;
}

Session new_session(RecommendationChain chain, WorkingCriterion criterion) {
  return Session(std::move(chain), criterion);
}

Decision submit_metrics(Session& session, const MetricsReport& report) {
  return session.submit(report);
}

std::size_t Ranking::rank_of_submitted() const {
  for (const auto& e : entries) {
    if (e.submitted) return e.rank;
  }
  return 0;
}

Ranking compare_baselines(const MetricsReport& report,
                          const std::vector<MetricsReport>& baselines) {
  std::vector<RankedEntry> entries;
  entries.push_back({0, report, true});
  for (const auto& b : baselines) entries.push_back({0, b, false});
  std::stable_sort(entries.begin(), entries.end(),
                   [](const RankedEntry& x, const RankedEntry& y) {
                     const auto& a = x.report;
                     const auto& b = y.report;
                     if (a.f1 != b.f1) return a.f1 > b.f1;
                     if (a.mcc != b.mcc) return a.mcc > b.mcc;
                     return a.bacc > b.bacc;
                   });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto& e = entries[i];
    e.rank = i + 1;
    e.delta_f1 = report.f1 - e.report.f1;
    e.delta_mcc = report.mcc - e.report.mcc;
    e.delta_bacc = report.bacc - e.report.bacc;
    e.delta_sensitivity = report.sensitivity - e.report.sensitivity;
    e.delta_specificity = report.specificity - e.report.specificity;
  }
  return {std::move(entries)};
}

}  // namespace fmselect
