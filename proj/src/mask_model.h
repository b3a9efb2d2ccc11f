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

#ifndef FMSELECT_SRC_MASK_MODEL_H_
#define FMSELECT_SRC_MASK_MODEL_H_

#include <cstdint>
#include <vector>

#include "fmselect/feature_model.h"

namespace fmselect::internal {

using Mask = std::uint32_t;

// A small feature model flattened into bit operations, with the attribute
// valuation folded into the constraints. accepts() is the per-mask predicate
// of the brute-force kernels.
class MaskModel {
 public:
  // Throws TooLarge above kEnumerationLimit features and MissingAttribute
  // for an unvalued compared attribute.
  MaskModel(const FeatureModel& model, const AttributeValuation& attributes);

  std::size_t size() const { return size_; }
  bool accepts(Mask mask) const;

 private:
  enum class Op : std::uint8_t { kFeature, kTrue, kFalse, kNot, kAnd, kOr, kImplies, kIff };
  struct Instr {
    Op op;
    std::uint8_t bit;
  };
  struct Link {
    Mask child;
    Mask parent;
  };
  struct Group {
    Mask parent;
    Mask members;
    bool exclusive;
  };

  void compile(const FeatureModel& model, const Formula& f,
               const AttributeValuation& attributes, std::vector<Instr>& out);
  bool run(const std::vector<Instr>& program, Mask mask) const;

  std::size_t size_ = 0;
  Mask root_ = 0;
  std::vector<Link> parents_;
  std::vector<Link> mandatory_;
  std::vector<Group> groups_;
  std::vector<std::vector<Instr>> constraints_;
};

Configuration to_configuration(Mask mask, std::size_t size,
                               const AttributeValuation& attributes);

}  // namespace fmselect::internal

#endif  // FMSELECT_SRC_MASK_MODEL_H_
