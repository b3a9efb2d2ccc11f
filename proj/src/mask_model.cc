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

#include "mask_model.h"

#include <bit>

#include "fmselect/analysis.h"
#include "fmselect/errors.h"

namespace fmselect::internal {

namespace {
constexpr std::size_t kMaxStack = 256;
}  // namespace

MaskModel::MaskModel(const FeatureModel& model,
                     const AttributeValuation& attributes)
    : size_(model.size()) {
  if (size_ > kEnumerationLimit) throw TooLarge(size_, kEnumerationLimit);
  if (auto root = model.root()) root_ = Mask{1} << *root;
  for (FeatureId id = 0; id < size_; ++id) {
    const auto& f = model.features[id];
    if (!f.parent) continue;
    const Link link{Mask{1} << id, Mask{1} << *f.parent};
    parents_.push_back(link);
    if (!f.group && f.variation == Variation::kMandatory) mandatory_.push_back(link);
  }
  for (const auto& g : model.groups) {
    Mask members = 0;
    for (FeatureId m : g.members) members |= Mask{1} << m;
    groups_.push_back({Mask{1} << g.parent, members, g.kind == GroupKind::kXor});
  }
  for (const auto& c : model.constraints) {
    std::vector<Instr> program;
    compile(model, c.formula, attributes, program);
    // Stack depth never exceeds the program length.
    if (program.size() > kMaxStack) {
      throw InvalidArgument("constraint " + c.label + " is too deeply nested");
    }
    constraints_.push_back(std::move(program));
  }
}

void MaskModel::compile(const FeatureModel& model, const Formula& f,
                        const AttributeValuation& attributes,
                        std::vector<Instr>& out) {
  switch (f.kind()) {
    case Formula::Kind::kFeature: {
      auto id = model.find(f.symbol());
      if (id) {
        out.push_back({Op::kFeature, static_cast<std::uint8_t>(*id)});
      } else {
        out.push_back({Op::kFalse, 0});
      }
      return;
    }
    case Formula::Kind::kCompare: {
      auto it = attributes.find(f.symbol());
      if (it == attributes.end()) throw MissingAttribute(f.symbol());
      out.push_back({compare(it->second, f.op(), f.value()) ? Op::kTrue : Op::kFalse, 0});
      return;
    }
    case Formula::Kind::kNot:
      compile(model, f.lhs(), attributes, out);
      out.push_back({Op::kNot, 0});
      return;
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr:
    case Formula::Kind::kImplies:
    case Formula::Kind::kIff:
      break;
  }
  compile(model, f.lhs(), attributes, out);
  compile(model, f.rhs(), attributes, out);
  switch (f.kind()) {
    case Formula::Kind::kAnd:
      out.push_back({Op::kAnd, 0});
      break;
    case Formula::Kind::kOr:
      out.push_back({Op::kOr, 0});
      break;
    case Formula::Kind::kImplies:
      out.push_back({Op::kImplies, 0});
      break;
    default:
      out.push_back({Op::kIff, 0});
      break;
  }
}

bool MaskModel::run(const std::vector<Instr>& program, Mask mask) const {
  bool stack[kMaxStack];
  std::size_t top = 0;
  for (const Instr& in : program) {
    switch (in.op) {
      case Op::kFeature:
        stack[top++] = (mask >> in.bit) & 1u;
        break;
      case Op::kTrue:
        stack[top++] = true;
        break;
      case Op::kFalse:
        stack[top++] = false;
        break;
      case Op::kNot:
        stack[top - 1] = !stack[top - 1];
        break;
      case Op::kAnd:
        --top;
        stack[top - 1] = stack[top - 1] && stack[top];
        break;
      case Op::kOr:
        --top;
        stack[top - 1] = stack[top - 1] || stack[top];
        break;
      case Op::kImplies:
        --top;
        stack[top - 1] = !stack[top - 1] || stack[top];
        break;
      case Op::kIff:
        --top;
        stack[top - 1] = stack[top - 1] == stack[top];
        break;
    }
  }
  return stack[0];
}

bool MaskModel::accepts(Mask mask) const {
  if ((mask & root_) == 0) return false;
  for (const Link& l : parents_) {
    if ((mask & l.child) && !(mask & l.parent)) return false;
  }
  for (const Link& l : mandatory_) {
    if ((mask & l.parent) && !(mask & l.child)) return false;
  }
  for (const Group& g : groups_) {
    if (!(mask & g.parent)) continue;
    const int count = std::popcount(mask & g.members);
    if (g.exclusive ? count != 1 : count == 0) return false;
  }
  for (const auto& program : constraints_) {
    if (!run(program, mask)) return false;
  }
  return true;
}

Configuration to_configuration(Mask mask, std::size_t size,
                               const AttributeValuation& attributes) {
  Configuration config;
  for (FeatureId id = 0; id < size; ++id) {
    if ((mask >> id) & 1u) config.selected.insert(id);
  }
  config.attributes = attributes;
  return config;
}

}  // namespace fmselect::internal
