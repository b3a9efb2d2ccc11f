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

#include <gtest/gtest.h>

#include "fmselect/dsl.h"
#include "fmselect/knowledge_base.h"
#include "fmselect/recommender.h"

namespace fmselect {
namespace {

std::vector<ParseDiagnostic> diagnostics_of(std::string_view text) {
  try {
    parse_model(text);
  } catch (const ParseError& e) {
    return e.diagnostics();
  }
  return {};
}

TEST(ParseModel, MinimalModel) {
  const FeatureModel m = parse_model("model m\nroot R { }");
  EXPECT_EQ(m.name, "m");
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m.features[0].name, "R");
  EXPECT_FALSE(m.features[0].parent.has_value());
}

TEST(ParseModel, CommentsAndFullGrammar) {
  const FeatureModel m = parse_model(
      "# leading comment\n"
      "model shop  # trailing comment\n"
      "root Shop {\n"
      "  mandatory Catalog\n"
      "  optional Payment {\n"
      "    or {\n"
      "      optional Card\n"
      "      optional Cash\n"
      "    }\n"
      "  }\n"
      "}\n"
      "attribute Users : int\n"
      "constraint C1.1: Card iff Users >= 10 and not Cash\n");
  EXPECT_EQ(m.size(), 5u);
  ASSERT_EQ(m.groups.size(), 1u);
  EXPECT_EQ(m.groups[0].kind, GroupKind::kOr);
  EXPECT_EQ(m.features[1].variation, Variation::kMandatory);
  ASSERT_EQ(m.constraints.size(), 1u);
  EXPECT_EQ(m.constraints[0].label, "C1.1");
  EXPECT_EQ(m.constraints[0].formula, parse_formula("Card iff (Users >= 10 and not Cash)"));
}

TEST(ParseFormula, PrecedenceAndAssociativity) {
  EXPECT_EQ(parse_formula("a or b and c"), parse_formula("a or (b and c)"));
  EXPECT_EQ(parse_formula("a implies b or c"), parse_formula("a implies (b or c)"));
  EXPECT_EQ(parse_formula("a iff b implies c"), parse_formula("a iff (b implies c)"));
  EXPECT_EQ(parse_formula("not a and b"), parse_formula("(not a) and b"));
  EXPECT_EQ(parse_formula("a implies b implies c"), parse_formula("(a implies b) implies c"));
  EXPECT_EQ(parse_formula("a iff b iff c"), parse_formula("(a iff b) iff c"));
  EXPECT_THROW(parse_formula("a and"), ParseError);
  EXPECT_THROW(parse_formula("n = 3"), ParseError);
}

TEST(ParseModel, UndersizedGroupSpansTheBlock) {
  const auto d = diagnostics_of("model m\nroot R {\n  xor {\n    optional A\n  }\n}\n");
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].kind, ParseDiagnostic::Kind::kUndersizedGroup);
  EXPECT_EQ(d[0].span.line, 3u);
  EXPECT_EQ(d[0].span.column, 3u);
  // From "xor" through the closing brace on line 5, column 3.
  const std::string text = "model m\nroot R {\n  xor {\n    optional A\n  }\n}\n";
  EXPECT_EQ(text.substr(d[0].span.offset, d[0].span.length), "xor {\n    optional A\n  }");
}

TEST(ParseModel, CollectsIndependentErrors) {
  const auto d = diagnostics_of(
      "model m\n"
      "root R {\n"
      "  optional A\n"
      "  optional A\n"
      "  feature B\n"
      "}\n"
      "attribute n : float\n"
      "constraint K1: Missing and\n"
      "constraint K2: A\n");
  std::vector<ParseDiagnostic::Kind> kinds;
  for (const auto& x : d) kinds.push_back(x.kind);
  EXPECT_GE(d.size(), 4u);
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), ParseDiagnostic::Kind::kDuplicateName),
            kinds.end());
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), ParseDiagnostic::Kind::kUnknownKeyword),
            kinds.end());
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), ParseDiagnostic::Kind::kSyntax), kinds.end());
  for (std::size_t i = 1; i < d.size(); ++i) EXPECT_LE(d[i - 1].span.offset, d[i].span.offset);
  EXPECT_EQ(format_diagnostic(d[0]).substr(0, 5), "4:12:");
}

TEST(ParseModel, UnknownSymbolsAndDuplicateLabels) {
  const auto d = diagnostics_of(
      "model m\nroot R {\n  optional A\n}\nconstraint K1: A implies Foo\n"
      "constraint K1: A\nconstraint K2: size < 3\n");
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[0].kind, ParseDiagnostic::Kind::kUnknownSymbol);
  EXPECT_EQ(d[0].span.line, 5u);
  EXPECT_EQ(d[0].span.column, 26u);
  EXPECT_EQ(d[0].span.length, 3u);
  EXPECT_EQ(d[1].kind, ParseDiagnostic::Kind::kDuplicateName);
  EXPECT_EQ(d[2].kind, ParseDiagnostic::Kind::kUnknownSymbol);
}

TEST(ParseModel, RootRules) {
  EXPECT_FALSE(diagnostics_of("model m\n").empty());
  EXPECT_FALSE(diagnostics_of("model m\nroot A\nroot B\n").empty());
  EXPECT_FALSE(diagnostics_of("model m\nroot A {\n  optional B\n}\nattribute B : int\n").empty());
  EXPECT_FALSE(diagnostics_of("").empty());
}

TEST(ParseModel, ColumnsCountCharactersNotBytes) {
  // "é" is two bytes but one column.
  const auto d = diagnostics_of("model m\n# é\nroot R {\n  optional é\n}\n");
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d[0].span.line, 4u);
  EXPECT_EQ(d[0].span.column, 12u);
}

TEST(Serialize, MinimalModelIsCanonical) {
  EXPECT_EQ(serialize_model(parse_model("model m\nroot R { }")), "model m\n\nroot R\n");
}

TEST(Serialize, CanonicalLayout) {
  const FeatureModel m = parse_model(
      "model  shop\nconstraint B2: Card\nroot Shop { optional Payment { or { optional Card "
      "optional Cash } } }\nconstraint B10: Cash or Card\nconstraint A1: Users > 1\n"
      "attribute Users: int\n");
  EXPECT_EQ(serialize_model(m),
            "model shop\n"
            "\n"
            "root Shop {\n"
            "  optional Payment {\n"
            "    or {\n"
            "      optional Card\n"
            "      optional Cash\n"
            "    }\n"
            "  }\n"
            "}\n"
            "\n"
            "attribute Users : int\n"
            "\n"
            "constraint A1: Users > 1\n"
            "constraint B2: Card\n"
            "constraint B10: Cash or Card\n");
  EXPECT_TRUE(label_less("C2.9", "C2.10"));
  EXPECT_FALSE(label_less("C2.10", "C2.9"));
}

TEST(Serialize, KnowledgeBaseRoundTrips) {
  const FeatureModel kb = parse_model(embedded_model_text());
  const std::string text = serialize_model(kb);
  const FeatureModel again = parse_model(text);
  EXPECT_TRUE(structurally_equal(kb, again));
  EXPECT_EQ(serialize_model(again), text);
  std::vector<std::string> labels;
  for (const auto& c : again.constraints) labels.push_back(c.label);
  EXPECT_EQ(labels, expected_constraint_labels());
}

TEST(Serialize, KnowledgeBaseShape) {
  const FeatureModel m = parse_model(embedded_model_text());
  const FeatureId root = *m.root();
  const auto top = m.children(root);
  ASSERT_EQ(top.size(), 2u);
  EXPECT_EQ(m.name_of(top[0]), "ModelingTechniques");
  EXPECT_EQ(m.name_of(top[1]), "ModelingAssumptions");
  EXPECT_EQ(m.features[top[0]].variation, Variation::kMandatory);
  EXPECT_EQ(m.features[top[1]].variation, Variation::kMandatory);
  std::vector<std::string> categories;
  for (FeatureId c : m.children(top[0])) {
    categories.push_back(m.name_of(c));
    ASSERT_TRUE(m.features[c].group.has_value());
    EXPECT_EQ(m.groups[*m.features[c].group].kind, GroupKind::kXor);
  }
  EXPECT_EQ(categories, (std::vector<std::string>{"Classification", "Regression", "Clustering",
                                                  "DimensionalityReduction"}));
}

TEST(ExportDot, MinimalModelHasOneNode) {
  const std::string dot = export_dot(parse_model("model m\nroot R\n"));
  EXPECT_EQ(dot,
            "digraph \"m\" {\n"
            "  rankdir=TB;\n"
            "  node [shape=box, style=rounded, fontname=\"Helvetica\"];\n"
            "  \"R\";\n"
            "}\n");
}

TEST(ExportDot, XorGroupOfThree) {
  const FeatureModel m = parse_model(
      "model m\nroot R {\n  mandatory M\n  optional O\n  xor {\n    optional A\n"
      "    optional B\n    optional C\n  }\n}\n");
  const std::string dot = export_dot(m);
  std::size_t labeled = 0;
  for (std::size_t at = dot.find("label=\"xor\"]"); at != std::string::npos;
       at = dot.find("label=\"xor\"]", at + 1)) {
    ++labeled;
  }
  EXPECT_EQ(labeled, 3u);
  std::size_t clusters = 0;
  for (std::size_t at = dot.find("subgraph cluster_"); at != std::string::npos;
       at = dot.find("subgraph cluster_", at + 1)) {
    ++clusters;
  }
  EXPECT_EQ(clusters, 1u);
  EXPECT_NE(dot.find("  \"R\" -> \"M\" [arrowhead=dot];\n"), std::string::npos);
  EXPECT_NE(dot.find("  \"R\" -> \"O\" [arrowhead=odot];\n"), std::string::npos);
  EXPECT_NE(dot.find("    label=\"xor\";\n"), std::string::npos);
  EXPECT_EQ(dot, export_dot(m));
}

TEST(ExportDot, HighlightsTheRecommendedTechnique) {
  const KnowledgeBase kb = load_knowledge_base();
  ModelingAssumptions a;
  a.sample_size = 299;
  a.num_features = 13;
  a.prediction = Prediction::kCategory;
  a.labeled = true;
  const std::string dot = export_dot(kb.model(), as_configuration(kb, a, "LinearSVC"));
  EXPECT_NE(dot.find("\"LinearSVC\" [style=\"rounded,filled\""), std::string::npos);
  EXPECT_EQ(dot.find("\"SGDClassifier\" [style"), std::string::npos);
}

TEST(ExportDot, RejectsInvalidHighlight) {
  const FeatureModel m = parse_model("model m\nroot R {\n  mandatory A\n}\n");
  EXPECT_THROW(export_dot(m, make_configuration(m, {"R"})), InvalidHighlight);
  const FeatureModel with_attr = parse_model(
      "model m\nroot R {\n  optional A\n}\nattribute n : int\nconstraint K: A implies n > 1\n");
  EXPECT_THROW(export_dot(with_attr, make_configuration(with_attr, {"R"})), InvalidHighlight);
}

}  // namespace
}  // namespace fmselect
