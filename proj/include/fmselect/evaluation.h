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

// Walks a recommendation chain against measured metrics: a technique that
// meets the working criterion is accepted, otherwise the chain falls back.

#ifndef FMSELECT_EVALUATION_H_
#define FMSELECT_EVALUATION_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fmselect/errors.h"
#include "fmselect/recommender.h"

namespace fmselect {

enum class Metric { kF1, kMcc, kBacc, kSensitivity, kSpecificity };

// "f1", "mcc", "bacc", "sensitivity", "specificity".
std::string_view to_string(Metric metric);
std::optional<Metric> parse_metric(std::string_view text);

// A technique works when its metric is at least the threshold.
struct WorkingCriterion {
  Metric metric = Metric::kF1;
  double threshold = 0.0;

  friend bool operator==(const WorkingCriterion&, const WorkingCriterion&) = default;
};

// Throws InvalidArgument when the threshold is outside the metric's range:
// [-1, 1] for MCC, [0, 1] for the others.
WorkingCriterion make_criterion(Metric metric, double threshold);
// Parses "metric:threshold", e.g. "f1:0.77".
WorkingCriterion parse_criterion(std::string_view text);

struct MetricsReport {
  std::string technique;
  double f1 = 0.0;
  double mcc = 0.0;
  double bacc = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  std::string provenance;

  double value(Metric metric) const;
  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

// Throws InvalidArgument for out-of-range metrics or an empty technique.
void check_report(const MetricsReport& report);

struct Accepted {
  std::string technique;
  friend bool operator==(const Accepted&, const Accepted&) = default;
};
// The submitted technique failed; `candidates` are what to try next.
struct NotWorking {
  std::string technique;
  std::vector<std::string> candidates;
  friend bool operator==(const NotWorking&, const NotWorking&) = default;
};
// The submitted technique failed and nothing is left to try.
struct Exhausted {
  std::string technique;
  friend bool operator==(const Exhausted&, const Exhausted&) = default;
};

using Decision = std::variant<Accepted, NotWorking, Exhausted>;

std::string describe(const Decision& decision);

class EmptyChain : public Error {
 public:
  using Error::Error;
};
class WrongTechnique : public Error {
 public:
  using Error::Error;
};
// Raised when submitting to a session that has accepted or run out.
class SessionFinished : public Error {
 public:
  using Error::Error;
};

// Single-owner state. Within a step the alternatives may be tried in any
// order; the step fails once every alternative has failed. A session does
// not follow assumption changes: after adaptation start a new one.
class Session {
 public:
  Session(RecommendationChain chain, WorkingCriterion criterion);

  const RecommendationChain& chain() const { return chain_; }
  const WorkingCriterion& criterion() const { return criterion_; }
  // Index of the current step; equals the number of steps once exhausted.
  std::size_t cursor() const { return cursor_; }
  // Untried alternatives of the current step; empty once finished.
  const std::vector<std::string>& candidates() const { return candidates_; }
  bool finished() const { return finished_; }
  const std::vector<std::pair<MetricsReport, Decision>>& history() const {
    return history_;
  }

  Decision submit(const MetricsReport& report);

 private:
  RecommendationChain chain_;
  WorkingCriterion criterion_;
  std::size_t cursor_ = 0;
  std::vector<std::string> candidates_;
  bool finished_ = false;
  std::vector<std::pair<MetricsReport, Decision>> history_;
};

// Throws EmptyChain when the chain has no steps or an empty step.
Session new_session(RecommendationChain chain, WorkingCriterion criterion);
Decision submit_metrics(Session& session, const MetricsReport& report);

struct RankedEntry {
  std::size_t rank = 0;  // 1-based
  MetricsReport report;
  bool submitted = false;
  // Submitted report minus this entry.
  double delta_f1 = 0.0;
  double delta_mcc = 0.0;
  double delta_bacc = 0.0;
  double delta_sensitivity = 0.0;
  double delta_specificity = 0.0;
};

struct Ranking {
  std::vector<RankedEntry> entries;
  std::size_t rank_of_submitted() const;
};

// Orders the report and the baselines by F1, then MCC, then BACC, all
// descending. Ties keep input order with the report first.
Ranking compare_baselines(const MetricsReport& report,
                          const std::vector<MetricsReport>& baselines);

}  // namespace fmselect

#endif  // FMSELECT_EVALUATION_H_
