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

#include "fmselect/analysis.h"
#include "fmselect/dsl.h"
#include "fmselect/knowledge_base.h"

namespace fmselect {
namespace {

FeatureModel group_of_three(GroupKind kind) {
  ModelBuilder b("m");
  const FeatureId root = b.root("R");
  const std::size_t g = b.group(root, kind);
  b.member(g, "A");
  b.member(g, "B");
  b.member(g, "C");
  return std::move(b).build();
}

TEST(Enumerate, RootWithOptionalChildHasTwoConfigurations) {
  const FeatureModel m = parse_model("model m\nroot R {\n  optional A\n}\n");
  EXPECT_EQ(enumerate_configurations(m, {}).size(), 2u);
}

TEST(Enumerate, XorOfThreeHasThree) {
  EXPECT_EQ(enumerate_configurations(group_of_three(GroupKind::kXor), {}).size(), 3u);
  EXPECT_EQ(count_configurations(group_of_three(GroupKind::kXor), {}), 3u);
}

TEST(Enumerate, OrOfThreeHasSeven) {
  EXPECT_EQ(enumerate_configurations(group_of_three(GroupKind::kOr), {}).size(), 7u);
}

TEST(Enumerate, OrdersByBitmaskAndHonoursLimit) {
  const auto all = enumerate_configurations(group_of_three(GroupKind::kOr), {});
  // R=bit0, A=bit1, B=bit2, C=bit3: masks 3,5,7,9,11,13,15.
  std::vector<std::set<FeatureId>> expected = {{0, 1}, {0, 2}, {0, 1, 2}, {0, 3},
                                               {0, 1, 3}, {0, 2, 3}, {0, 1, 2, 3}};
  ASSERT_EQ(all.size(), expected.size());
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i].selected, expected[i]);
  EXPECT_EQ(enumerate_configurations(group_of_three(GroupKind::kOr), {}, 2).size(), 2u);
  EXPECT_EQ(reference::enumerate_configurations(group_of_three(GroupKind::kOr), {}, 2).size(), 2u);
}

TEST(Enumerate, SerialAndParallelAgree) {
  const FeatureModel small = parse_model(
      "model m\nroot R {\n  or {\n    optional A {\n      xor {\n        optional A1\n"
      "        optional A2\n      }\n    }\n    optional B\n  }\n  optional C\n}\n"
      "attribute n : int\nconstraint K1: C implies n > 3\n");
  for (std::int64_t n : {0, 10}) {
    const auto p = enumerate_configurations(small, {{"n", n}}, SIZE_MAX, Execution::kParallel);
    const auto s = enumerate_configurations(small, {{"n", n}}, SIZE_MAX, Execution::kSerial);
    EXPECT_EQ(p, s);
    EXPECT_EQ(p, reference::enumerate_configurations(small, {{"n", n}}));
  }
}

TEST(Enumerate, GuardsAgainstLargeModels) {
  ModelBuilder b("big");
  const FeatureId root = b.root("R");
  for (int i = 0; i < 24; ++i) b.child(root, "F" + std::to_string(i));
  const FeatureModel m = std::move(b).build();
  ASSERT_EQ(m.size(), kEnumerationLimit + 1);
  EXPECT_THROW(enumerate_configurations(m, {}), TooLarge);
  EXPECT_THROW(count_configurations(m, {}), TooLarge);
  EXPECT_THROW(reference::enumerate_configurations(m, {}), TooLarge);
  EXPECT_THROW(reference::propagate(m, PartialConfiguration::unknown(m)), TooLarge);
  // The solver-backed routines have no such guard.
  EXPECT_FALSE(propagate(m, PartialConfiguration::unknown(m)).conflict);
}

TEST(Enumerate, UnvaluedAttributeIsReported) {
  const FeatureModel m = parse_model(
      "model m\nroot R {\n  optional A\n}\nattribute n : int\nconstraint K1: A implies n > 3\n");
  EXPECT_THROW(enumerate_configurations(m, {}), MissingAttribute);
}

TEST(Propagate, MandatoryChildIsForced) {
  const FeatureModel m = parse_model("model m\nroot R {\n  mandatory A\n  optional B\n}\n");
  PartialConfiguration p = PartialConfiguration::unknown(m);
  p.set(m, "R", Assignment::kSelected);
  const PropagationResult r = propagate(m, p);
  EXPECT_FALSE(r.conflict);
  EXPECT_EQ(r.forced_selected, (std::set<FeatureId>{0, 1}));
  EXPECT_TRUE(r.forced_excluded.empty());
  EXPECT_EQ(r, reference::propagate(m, p));
}

TEST(Propagate, CategoryExcludesItsXorSiblings) {
  const KnowledgeBase kb = load_knowledge_base();
  const FeatureModel& m = kb.model();
  PartialConfiguration p = PartialConfiguration::unknown(m, {{"Samplesize", 299},
                                                             {"NumFeatures", 13}});
  p.set(m, "Category", Assignment::kSelected);
  const PropagationResult r = propagate(m, p);
  ASSERT_FALSE(r.conflict);
  EXPECT_TRUE(r.forced_excluded.contains(kb.id("Quantity")));
  EXPECT_TRUE(r.forced_excluded.contains(kb.id("Structure")));
  EXPECT_TRUE(r.forced_selected.contains(kb.id("Predictiontype")));
  EXPECT_TRUE(r.forced_excluded.contains(kb.id("Regression")));
  EXPECT_TRUE(r.forced_excluded.contains(kb.id("DimensionalityReduction")));
}

TEST(Propagate, ReportsConflicts) {
  const FeatureModel m = group_of_three(GroupKind::kXor);
  PartialConfiguration p = PartialConfiguration::unknown(m);
  p.set(m, "A", Assignment::kSelected).set(m, "B", Assignment::kSelected);
  const PropagationResult r = propagate(m, p);
  EXPECT_TRUE(r.conflict);
  EXPECT_TRUE(r.forced_selected.empty());
  EXPECT_FALSE(is_satisfiable(m, p));
  EXPECT_FALSE(complete(m, p).has_value());
  EXPECT_THROW(p.set(m, "Z", Assignment::kSelected), InvalidArgument);
}

TEST(Complete, ReturnsSmallestCompletion) {
  const FeatureModel m = group_of_three(GroupKind::kOr);
  PartialConfiguration p = PartialConfiguration::unknown(m);
  // With A unselected first, the smallest completion picks the last members.
  const auto c = complete(m, p);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->selected, (std::set<FeatureId>{0, 3}));
  p.set(m, "C", Assignment::kExcluded);
  EXPECT_EQ(complete(m, p)->selected, (std::set<FeatureId>{0, 2}));
}

TEST(Complete, ProducesValidConfigurationOfTheKnowledgeBase) {
  const KnowledgeBase kb = load_knowledge_base();
  PartialConfiguration p = PartialConfiguration::unknown(kb.model(), {{"Samplesize", 299},
                                                                      {"NumFeatures", 13}});
  p.set(kb.model(), "LinearSVC", Assignment::kSelected);
  const auto c = complete(kb.model(), p);
  ASSERT_TRUE(c.has_value());
  EXPECT_TRUE(is_valid_configuration(kb.model(), *c).valid());
  EXPECT_TRUE(c->is_selected(kb.id("Classification")));
}

}  // namespace
}  // namespace fmselect
