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

// JSON documents exchanged with other tools. Keys are emitted in a fixed
// order so output is byte-stable.
//
//   chain        {"category","steps":[[..]],"trace":[{"label","formula","value"}]}
//   no chain     {"reason","detail","trace"}
//   report       {"technique","f1","mcc","bacc","sensitivity","specificity","provenance"}
//   baselines    [report, ...]
//   assumptions  {"sample_size","num_features","prediction","labeled",
//                 "text_data","known_categories","few_features"}
//   delta        {"<assumption field>":{"old":..,"new":..}, ...}
//
// Readers throw InvalidArgument with the offending key on malformed input.

#ifndef FMSELECT_JSON_IO_H_
#define FMSELECT_JSON_IO_H_

#include <string_view>
#include <vector>

#include <json.hpp>

#include "fmselect/adaptation.h"
#include "fmselect/evaluation.h"
#include "fmselect/knowledge_base.h"
#include "fmselect/recommender.h"

namespace fmselect {

using Json = nlohmann::ordered_json;

Json parse_json(std::string_view text);

Json to_json(const RecommendationChain& chain);
Json to_json(const NoRecommendation& none);
Json to_json(const Recommendation& recommendation);
RecommendationChain chain_from_json(const Json& json);

Json to_json(const MetricsReport& report);
MetricsReport report_from_json(const Json& json);
std::vector<MetricsReport> baselines_from_json(const Json& json);

Json to_json(const ModelingAssumptions& assumptions);
ModelingAssumptions assumptions_from_json(const Json& json);

Json to_json(const AssumptionDelta& delta);
AssumptionDelta delta_from_json(const Json& json);

Json to_json(const AdaptationReport& report);
Json to_json(const Decision& decision);
Json to_json(const Ranking& ranking);
Json to_json(const CheckReport& report);

}  // namespace fmselect

#endif  // FMSELECT_JSON_IO_H_
