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

#include "cli.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "fmselect/adaptation.h"
#include "fmselect/dsl.h"
#include "fmselect/evaluation.h"
#include "fmselect/json_io.h"
#include "fmselect/knowledge_base.h"
#include "fmselect/recommender.h"

namespace fmselect::cli {

namespace {

enum class Format { kText, kJson };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
}

Json read_json(const std::string& path) {
  try {
    return parse_json(read_file(path));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

void print_json(std::ostream& out, const Json& json) { out << json.dump(2) << "\n"; }

std::string fixed(double v, const char* pattern = "%.3f") {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, pattern, v);
  return buffer;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (const auto& i : items) {
    if (!out.empty()) out += sep;
    out += i;
  }
  return out;
}

std::string chain_line(const RecommendationChain& chain) {
  std::vector<std::string> steps;
  for (const auto& s : chain.steps) steps.push_back(join(s, " | "));
  return std::string(to_string(chain.category)) + ": " + join(steps, " -> ");
}

void print_trace(std::ostream& out, const std::vector<TraceEntry>& trace) {
  out << "Trace:\n";
  for (const auto& t : trace) {
    std::string label = t.label;
    label.resize(std::max<std::size_t>(label.size(), 6), ' ');
    out << "  " << label << (t.value ? "true   " : "false  ") << t.formula << "\n";
  }
}

void print_recommendation(std::ostream& out, const Recommendation& rec) {
  if (const auto* chain = std::get_if<RecommendationChain>(&rec)) {
    out << "Category: " << to_string(chain->category) << "\n";
    std::vector<std::string> steps;
    for (const auto& s : chain->steps) steps.push_back(join(s, " | "));
    out << "Chain: " << join(steps, " -> ") << "\n";
    out << "Steps:\n";
    for (std::size_t i = 0; i < chain->steps.size(); ++i) {
      out << "  " << i + 1 << ". " << join(chain->steps[i], " | ") << "\n";
    }
    print_trace(out, chain->trace);
    return;
  }
  const auto& none = std::get<NoRecommendation>(rec);
  out << "No recommendation (" << to_string(none.reason) << "): " << none.detail << "\n";
  print_trace(out, none.trace);
}

std::string outcome_line(const Recommendation& rec) {
  if (const auto* chain = std::get_if<RecommendationChain>(&rec)) return chain_line(*chain);
  const auto& none = std::get<NoRecommendation>(rec);
  return "no recommendation (" + std::string(to_string(none.reason)) + "): " + none.detail;
}

std::optional<bool> parse_bool(const std::string& text) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw InvalidArgument("expected true or false, got '" + text + "'");
}

// Labels of the fallback edges that lead from `from` to any of `to`.
std::vector<std::string> edge_labels(const KnowledgeBase& kb, const Step& from,
                                     const std::vector<std::string>& to) {
  std::vector<std::string> labels;
  for (const auto& e : kb.fallback_edges()) {
    if (std::find(from.begin(), from.end(), e.from) == from.end()) continue;
    for (const auto& t : e.to) {
      if (std::find(to.begin(), to.end(), t) != to.end() &&
          std::find(labels.begin(), labels.end(), e.source) == labels.end()) {
        labels.push_back(e.source);
      }
    }
  }
  return labels;
}

struct Options {
  std::string format = "text";
  std::string path;
  std::string config;
  std::int64_t samples = 0;
  std::int64_t features = 0;
  std::string predict;
  bool labeled = false;
  bool text = false;
  std::string known_categories;
  bool few_features = false;
  std::string chain;
  std::string criterion;
  std::vector<std::string> reports;
  std::string baselines;
  std::string assumptions;
  std::string delta;
};

Format format_of(const Options& o) { return o.format == "json" ? Format::kJson : Format::kText; }

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const std::string text = read_file(o.path);
  try {
    const FeatureModel model = parse_model(text);
    if (format_of(o) == Format::kJson) {
      print_json(out, Json{{"valid", true},
                           {"model", model.name},
                           {"features", model.size()},
                           {"groups", model.groups.size()},
                           {"attributes", model.attributes.size()},
                           {"constraints", model.constraints.size()}});
    } else {
      out << "ok: model " << model.name << ": " << model.size() << " features, "
          << model.groups.size() << " groups, " << model.attributes.size()
          << " attributes, " << model.constraints.size() << " constraints\n";
    }
    return kExitOk;
  } catch (const ParseError& e) {
    if (format_of(o) == Format::kJson) {
      Json list = Json::array();
      for (const auto& d : e.diagnostics()) {
        list.push_back(Json{{"line", d.span.line},
                            {"column", d.span.column},
                            {"length", d.span.length},
                            {"kind", to_string(d.kind)},
                            {"message", d.message}});
      }
      print_json(out, Json{{"valid", false}, {"diagnostics", list}});
    }
    for (const auto& d : e.diagnostics()) err << o.path << ":" << format_diagnostic(d) << "\n";
    return kExitInputError;
  }
}

int cmd_export_kb(const Options& o, std::ostream& out) {
  load_knowledge_base();  // refuse to export a corrupt asset
  const std::filesystem::path dir(o.path);
  std::filesystem::create_directories(dir);
  const std::vector<std::pair<std::string, std::string_view>> files = {
      {"sklearn.fm", embedded_model_text()},
      {"sklearn_fallbacks.json", embedded_fallbacks_text()},
      {"baselines.json", embedded_baselines_text()}};
  Json written = Json::array();
  for (const auto& [name, content] : files) {
    write_file(dir / name, content);
    written.push_back((dir / name).string());
  }
  if (format_of(o) == Format::kJson) {
    print_json(out, Json{{"written", written}});
  } else {
    for (const auto& w : written) out << "wrote " << w.get<std::string>() << "\n";
  }
  return kExitOk;
}

int cmd_dot(const Options& o, std::ostream& out) {
  const FeatureModel model = parse_model(read_file(o.path));
  std::optional<Configuration> highlight;
  if (!o.config.empty()) {
    const Json config = read_json(o.config);
    std::vector<std::string> selected;
    AttributeValuation attributes;
    try {
      selected = config.at("selected").get<std::vector<std::string>>();
      if (config.contains("attributes")) {
        for (const auto& [k, v] : config.at("attributes").items()) {
          attributes[k] = v.get<std::int64_t>();
        }
      }
    } catch (const nlohmann::json::exception&) {
      throw InvalidArgument(o.config + ": expected {\"selected\":[..],\"attributes\":{..}}");
    }
    highlight = make_configuration(model, selected, attributes);
  }
  const std::string dot = export_dot(model, highlight);
  if (format_of(o) == Format::kJson) {
    print_json(out, Json{{"dot", dot}});
  } else {
    out << dot;
  }
  return kExitOk;
}

int cmd_kb_check(const Options& o, std::ostream& out) {
  const CheckReport report = self_check(load_knowledge_base());
  if (format_of(o) == Format::kJson) {
    print_json(out, to_json(report));
  } else {
    for (const auto& check : report.checks) {
      const bool failed = std::any_of(report.failures.begin(), report.failures.end(),
                                      [&](const CheckFailure& f) { return f.check == check; });
      out << (failed ? "FAIL " : "ok   ") << check << "\n";
    }
    for (const auto& f : report.failures) {
      out << "  " << f.check << ": " << f.subject << ": " << f.detail << "\n";
    }
    for (const auto& n : report.notes) out << "note: " << n << "\n";
  }
  return report.passed() ? kExitOk : kExitNoResult;
}

int cmd_recommend(const Options& o, std::ostream& out) {
  ModelingAssumptions a;
  a.sample_size = o.samples;
  a.num_features = o.features;
  a.prediction = *parse_prediction(o.predict);
  a.labeled = o.labeled;
  a.text_data = o.text;
  if (!o.known_categories.empty()) a.known_categories = parse_bool(o.known_categories);
  a.few_features = o.few_features;
  const Recommendation rec = recommend(load_knowledge_base(), a);
  if (format_of(o) == Format::kJson) {
    print_json(out, to_json(rec));
  } else {
    print_recommendation(out, rec);
  }
  return std::holds_alternative<RecommendationChain>(rec) ? kExitOk : kExitNoResult;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  const KnowledgeBase kb = load_knowledge_base();
  const Json chain_json = read_json(o.chain);
  if (!chain_json.contains("category")) {
    throw InvalidArgument(o.chain + ": not a recommendation chain");
  }
  const RecommendationChain chain = chain_from_json(chain_json);
  const WorkingCriterion criterion = parse_criterion(o.criterion);
  Session session = new_session(chain, criterion);

  Json submissions = Json::array();
  std::vector<std::string> lines;
  MetricsReport last;
  for (const auto& path : o.reports) {
    MetricsReport report;
    try {
      report = report_from_json(read_json(path));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(path + ": " + e.what());
    }
    const std::size_t step_before = session.cursor();
    const Decision decision = session.submit(report);
    last = report;
    Json entry = to_json(decision);
    std::string line = report.technique + ": " + std::string(to_string(criterion.metric)) +
                       " " + fixed(report.value(criterion.metric)) +
                       (std::holds_alternative<Accepted>(decision) ? " >= " : " < ") +
                       fixed(criterion.threshold, "%g") + ": " + describe(decision);
    if (const auto* n = std::get_if<NotWorking>(&decision)) {
      std::vector<std::string> labels;
      if (session.cursor() != step_before) {
        labels = edge_labels(kb, chain.steps[step_before], n->candidates);
      }
      entry["labels"] = labels;
      line += labels.empty() ? " (remaining alternatives of the same step)"
                             : " (" + join(labels, ", ") + ")";
    } else if (std::holds_alternative<Exhausted>(decision)) {
      std::vector<std::string> labels;
      for (const auto& t : chain.trace) labels.push_back(t.label);
      entry["labels"] = labels;
      line += "; no fallback remains (rules consulted: " + join(labels, ", ") + ")";
    }
    submissions.push_back(entry);
    lines.push_back(line);
  }

  const Decision& final_decision = session.history().back().second;
  std::string summary = describe(final_decision);
  Json result{{"criterion", o.criterion}, {"submissions", submissions},
              {"final", to_json(final_decision)}};
  std::optional<Ranking> ranking;
  if (!o.baselines.empty()) {
    std::vector<MetricsReport> baselines;
    try {
      baselines = baselines_from_json(read_json(o.baselines));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(o.baselines + ": " + e.what());
    }
    ranking = compare_baselines(last, baselines);
    summary += "; rank " + std::to_string(ranking->rank_of_submitted()) + " of " +
               std::to_string(ranking->entries.size());
    result["ranking"] = to_json(*ranking);
  }
  result["summary"] = summary;

  if (format_of(o) == Format::kJson) {
    print_json(out, result);
  } else {
    out << summary << "\n";
    out << "Submissions:\n";
    for (const auto& l : lines) out << "  " << l << "\n";
    if (ranking) {
      out << "Ranking by f1, then mcc, then bacc (deltas are submitted minus row):\n";
      for (const auto& e : ranking->entries) {
        std::string name = e.report.technique + (e.submitted ? "*" : "");
        name.resize(std::max<std::size_t>(name.size(), 20), ' ');
        out << "  " << e.rank << "  " << name << "f1 " << fixed(e.report.f1) << "  mcc "
            << fixed(e.report.mcc) << "  bacc " << fixed(e.report.bacc) << "  sens "
            << fixed(e.report.sensitivity) << "  spec " << fixed(e.report.specificity);
        if (!e.submitted) {
          out << "  delta f1 " << fixed(e.delta_f1, "%+.3f") << " mcc "
              << fixed(e.delta_mcc, "%+.3f") << " bacc " << fixed(e.delta_bacc, "%+.3f");
        }
        out << "\n";
      }
    }
  }
  return std::holds_alternative<Accepted>(final_decision) ? kExitOk : kExitNoResult;
}

int cmd_adapt(const Options& o, std::ostream& out) {
  ModelingAssumptions a;
  AssumptionDelta d;
  try {
    a = assumptions_from_json(read_json(o.assumptions));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(o.assumptions + ": " + e.what());
  }
  try {
    d = delta_from_json(read_json(o.delta));
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(o.delta + ": " + e.what());
  }
  const AdaptationReport report = reselect(load_knowledge_base(), a, d);
  if (format_of(o) == Format::kJson) {
    print_json(out, to_json(report));
  } else {
    out << "Old: " << outcome_line(report.old_chain) << "\n";
    out << "New: " << outcome_line(report.new_chain) << "\n";
    out << "Changed constraints: "
        << (report.changed_constraints.empty() ? "none" : join(report.changed_constraints, ", "))
        << "\n";
    out << "Selected: "
        << (report.feature_diff.selected.empty() ? "none" : join(report.feature_diff.selected, ", "))
        << "\n";
    out << "Deselected: "
        << (report.feature_diff.deselected.empty() ? "none"
                                                   : join(report.feature_diff.deselected, ", "))
        << "\n";
    if (!report.chains_identical()) {
      out << "The chain changed; start a new evaluation session.\n";
    }
  }
  return std::holds_alternative<RecommendationChain>(report.new_chain) ? kExitOk
                                                                        : kExitNoResult;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Feature-model based selection of machine learning techniques", "fmselect"};
  app.require_subcommand(1);
  Options o;
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
  };

  auto* validate = app.add_subcommand("validate", "Parse and check a .fm model");
  validate->add_option("file", o.path, "Model file")->required();
  add_format(validate);

  auto* export_kb = app.add_subcommand("export-kb", "Write the embedded knowledge base files");
  export_kb->add_option("dir", o.path, "Output directory")->required();
  add_format(export_kb);

  auto* dot = app.add_subcommand("dot", "Print a model as a Graphviz digraph");
  dot->add_option("file", o.path, "Model file")->required();
  dot->add_option("--config", o.config,
                  "JSON {\"selected\":[..],\"attributes\":{..}} to highlight");
  add_format(dot);

  auto* kb_check = app.add_subcommand("kb-check", "Run the knowledge base self-check");
  add_format(kb_check);

  auto* rec = app.add_subcommand("recommend", "Recommend a technique chain");
  rec->add_option("--samples", o.samples, "Number of samples")
      ->required()
      ->check(CLI::NonNegativeNumber);
  rec->add_option("--features", o.features, "Number of features")
      ->check(CLI::NonNegativeNumber);
  rec->add_option("--predict", o.predict, "What is predicted")
      ->required()
      ->check(CLI::IsMember({"category", "quantity", "structure", "none"}));
  rec->add_flag("--labeled", o.labeled, "The data is labeled");
  rec->add_flag("--text", o.text, "The data is text");
  rec->add_option("--known-categories", o.known_categories,
                  "Whether the number of categories is known (true/false)");
  rec->add_flag("--few-features", o.few_features, "Only a few features are important");
  add_format(rec);

  auto* evaluate = app.add_subcommand("evaluate", "Walk a chain against metrics reports");
  evaluate->add_option("--chain", o.chain, "Chain JSON from recommend")->required();
  evaluate->add_option("--criterion", o.criterion, "Working criterion, e.g. f1:0.77")
      ->required();
  evaluate->add_option("--report", o.reports, "Metrics report JSON (repeatable, in order)")
      ->required();
  evaluate->add_option("--baselines", o.baselines, "Baseline reports JSON array");
  add_format(evaluate);

  auto* adapt = app.add_subcommand("adapt", "Re-select after an assumption change");
  adapt->add_option("--assumptions", o.assumptions, "Assumptions JSON")->required();
  adapt->add_option("--delta", o.delta, "Delta JSON")->required();
  add_format(adapt);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out, err);
    if (export_kb->parsed()) return cmd_export_kb(o, out);
    if (dot->parsed()) return cmd_dot(o, out);
    if (kb_check->parsed()) return cmd_kb_check(o, out);
    if (rec->parsed()) return cmd_recommend(o, out);
    if (evaluate->parsed()) return cmd_evaluate(o, out);
    if (adapt->parsed()) return cmd_adapt(o, out);
  } catch (const ParseError& e) {
    for (const auto& d : e.diagnostics()) err << o.path << ":" << format_diagnostic(d) << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace fmselect::cli
