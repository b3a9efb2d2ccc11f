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

#include "random_model.h"

#include <string>
#include <vector>

namespace fmselect::testing {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p = 0.5) {
  return std::bernoulli_distribution(p)(rng);
}

class TreeGrower {
 public:
  TreeGrower(std::mt19937_64& rng, ModelBuilder& builder, std::size_t target)
      : rng_(rng), builder_(builder), target_(target) {}

  void grow(FeatureId parent, std::size_t depth) {
    const std::size_t slots = uniform(rng_, 1, 3);
    for (std::size_t s = 0; s < slots && used() < target_; ++s) {
      // A group needs two members; fall back to a solo child near the budget.
      if (used() + 2 <= target_ && coin(rng_, 0.4)) {
        const auto kind = coin(rng_) ? GroupKind::kXor : GroupKind::kOr;
        const std::size_t group = builder_.group(parent, kind);
        const std::size_t members = std::min<std::size_t>(uniform(rng_, 2, 3), target_ - used());
        // Members still to come keep their budget while earlier ones grow subtrees.
        reserved_ += members;
        for (std::size_t m = 0; m < members; ++m) {
          --reserved_;
          // The flag is ignored inside groups but must round-trip.
          const auto variation = coin(rng_, 0.2) ? Variation::kMandatory : Variation::kOptional;
          const FeatureId id = builder_.member(group, next_name(), variation);
          maybe_recurse(id, depth);
        }
      } else {
        const auto variation = coin(rng_) ? Variation::kMandatory : Variation::kOptional;
        const FeatureId id = builder_.child(parent, next_name(), variation);
        maybe_recurse(id, depth);
      }
    }
  }

  std::size_t count() const { return count_; }

 private:
  void maybe_recurse(FeatureId id, std::size_t depth) {
    if (depth < 4 && used() < target_ && coin(rng_, 0.45)) grow(id, depth + 1);
  }

  std::size_t used() const { return count_ + reserved_; }

  std::string next_name() { return "F" + std::to_string(count_++); }

  std::mt19937_64& rng_;
  ModelBuilder& builder_;
  std::size_t target_;
  std::size_t count_ = 1;  // the root
  std::size_t reserved_ = 0;
};

}  // namespace

Formula random_formula(std::mt19937_64& rng, const FeatureModel& model, std::size_t depth) {
  if (depth == 0 || coin(rng, 0.3)) {
    if (!model.attributes.empty() && coin(rng, 0.2)) {
      const auto& attr = model.attributes[uniform(rng, 0, model.attributes.size() - 1)];
      const auto op = static_cast<CompareOp>(uniform(rng, 0, 4));
      const auto value = std::uniform_int_distribution<std::int64_t>(-5, 200)(rng);
      return Formula::compare(attr.name, op, value);
    }
    return Formula::feature(model.features[uniform(rng, 0, model.size() - 1)].name);
  }
  switch (uniform(rng, 0, 4)) {
    case 0:
      return Formula::negate(random_formula(rng, model, depth - 1));
    case 1:
      return Formula::conj(random_formula(rng, model, depth - 1),
                           random_formula(rng, model, depth - 1));
    case 2:
      return Formula::disj(random_formula(rng, model, depth - 1),
                           random_formula(rng, model, depth - 1));
    case 3:
      return Formula::implies(random_formula(rng, model, depth - 1),
                              random_formula(rng, model, depth - 1));
    default:
      return Formula::iff(random_formula(rng, model, depth - 1),
                          random_formula(rng, model, depth - 1));
  }
}

FeatureModel random_model(std::mt19937_64& rng, const RandomModelOptions& options) {
  ModelBuilder builder("random");
  const FeatureId root = builder.root("F0");
  const std::size_t target = uniform(rng, options.min_features, options.max_features);
  TreeGrower grower(rng, builder, target);
  // Keep growing from the root until the budget is spent or a few rounds pass.
  for (int round = 0; round < 4 && grower.count() < target; ++round) grower.grow(root, 1);
  for (std::size_t i = 0; i < options.attributes; ++i) {
    builder.attribute("a" + std::to_string(i));
  }
  FeatureModel skeleton = std::move(builder).build();

  const std::size_t constraints = uniform(rng, 0, options.max_constraints);
  for (std::size_t i = 0; i < constraints; ++i) {
    skeleton.constraints.push_back(
        {"K" + std::to_string(i + 1), random_formula(rng, skeleton, options.max_formula_depth)});
  }
  return skeleton;
}

AttributeValuation random_valuation(std::mt19937_64& rng, const FeatureModel& model) {
  AttributeValuation values;
  for (const auto& a : model.attributes) {
    values[a.name] = std::uniform_int_distribution<std::int64_t>(-5, 200)(rng);
  }
  return values;
}

}  // namespace fmselect::testing
