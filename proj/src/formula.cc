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

#include "fmselect/formula.h"

#include <cassert>
#include <utility>
#include <vector>

#include "fmselect/errors.h"

namespace fmselect {

struct Formula::Node {
  Kind kind;
  std::string symbol;
  CompareOp op = CompareOp::kEqual;
  std::int64_t value = 0;
  std::vector<Formula> operands;
};

namespace {

// Binding strength used by the printer; must mirror the parser's grammar.
int precedence(Formula::Kind kind) {
  switch (kind) {
    case Formula::Kind::kIff:
      return 1;
    case Formula::Kind::kImplies:
      return 2;
    case Formula::Kind::kOr:
      return 3;
    case Formula::Kind::kAnd:
      return 4;
    case Formula::Kind::kNot:
      return 5;
    case Formula::Kind::kFeature:
    case Formula::Kind::kCompare:
      return 6;
  }
  return 6;
}

std::string_view keyword(Formula::Kind kind) {
  switch (kind) {
    case Formula::Kind::kAnd:
      return "and";
    case Formula::Kind::kOr:
      return "or";
    case Formula::Kind::kImplies:
      return "implies";
    case Formula::Kind::kIff:
      return "iff";
    default:
      return "";
  }
}

void print(const Formula& f, const AttributeValuation* attributes,
           std::string& out) {
  auto child = [&](const Formula& c, bool parens) {
    if (parens) out += '(';
    print(c, attributes, out);
    if (parens) out += ')';
  };
  switch (f.kind()) {
    case Formula::Kind::kFeature:
      out += f.symbol();
      return;
    case Formula::Kind::kCompare:
      out += f.symbol();
      if (attributes != nullptr) {
        auto it = attributes->find(f.symbol());
        out += '[';
        out += it == attributes->end() ? "?" : std::to_string(it->second);
        out += ']';
      }
      out += ' ';
      out += to_string(f.op());
      out += ' ';
      out += std::to_string(f.value());
      return;
    case Formula::Kind::kNot:
      out += "not ";
      child(f.lhs(), precedence(f.lhs().kind()) < precedence(Formula::Kind::kNot));
      return;
    default: {
      const int p = precedence(f.kind());
      child(f.lhs(), precedence(f.lhs().kind()) < p);
      out += ' ';
      out += keyword(f.kind());
      out += ' ';
      child(f.rhs(), precedence(f.rhs().kind()) <= p);
      return;
    }
  }
}

bool eval(const Formula& f, const FeaturePredicate& selected,
          const AttributeValuation& attributes) {
  switch (f.kind()) {
    case Formula::Kind::kFeature:
      return selected(f.symbol());
    case Formula::Kind::kCompare: {
      auto it = attributes.find(f.symbol());
      if (it == attributes.end()) throw MissingAttribute(f.symbol());
      return compare(it->second, f.op(), f.value());
    }
    case Formula::Kind::kNot:
      return !eval(f.lhs(), selected, attributes);
    default:
      break;
  }
  // Both sides are always evaluated so that a missing attribute is reported
  // regardless of which side decides the result.
  const bool a = eval(f.lhs(), selected, attributes);
  const bool b = eval(f.rhs(), selected, attributes);
  switch (f.kind()) {
    case Formula::Kind::kAnd:
      return a && b;
    case Formula::Kind::kOr:
      return a || b;
    case Formula::Kind::kImplies:
      return !a || b;
    case Formula::Kind::kIff:
      return a == b;
    default:
      assert(false);
      return false;
  }
}

void collect(const Formula& f, FormulaSymbols& out) {
  switch (f.kind()) {
    case Formula::Kind::kFeature:
      out.features.insert(f.symbol());
      return;
    case Formula::Kind::kCompare:
      out.attributes.insert(f.symbol());
      return;
    case Formula::Kind::kNot:
      collect(f.lhs(), out);
      return;
    default:
      collect(f.lhs(), out);
      collect(f.rhs(), out);
  }
}

}  // namespace

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::kLess:
      return "<";
    case CompareOp::kLessEqual:
      return "<=";
    case CompareOp::kGreater:
      return ">";
    case CompareOp::kGreaterEqual:
      return ">=";
    case CompareOp::kEqual:
      return "==";
  }
  return "==";
}

bool compare(std::int64_t lhs, CompareOp op, std::int64_t rhs) {
  switch (op) {
    case CompareOp::kLess:
      return lhs < rhs;
    case CompareOp::kLessEqual:
      return lhs <= rhs;
    case CompareOp::kGreater:
      return lhs > rhs;
    case CompareOp::kGreaterEqual:
      return lhs >= rhs;
    case CompareOp::kEqual:
      return lhs == rhs;
  }
  return false;
}

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::feature(std::string name) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kFeature, std::move(name), CompareOp::kEqual, 0, {}}));
}

Formula Formula::compare(std::string attribute, CompareOp op,
                         std::int64_t value) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kCompare, std::move(attribute), op, value, {}}));
}

Formula Formula::negate(Formula operand) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::kNot, {}, CompareOp::kEqual, 0, {std::move(operand)}}));
}

Formula Formula::binary(Kind kind, Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{kind, {}, CompareOp::kEqual, 0, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  return binary(Kind::kAnd, std::move(lhs), std::move(rhs));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  return binary(Kind::kOr, std::move(lhs), std::move(rhs));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  return binary(Kind::kImplies, std::move(lhs), std::move(rhs));
}

Formula Formula::iff(Formula lhs, Formula rhs) {
  return binary(Kind::kIff, std::move(lhs), std::move(rhs));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::symbol() const { return node_->symbol; }
CompareOp Formula::op() const { return node_->op; }
std::int64_t Formula::value() const { return node_->value; }

const Formula& Formula::lhs() const {
  assert(!node_->operands.empty());
  return node_->operands[0];
}

const Formula& Formula::rhs() const {
  assert(node_->operands.size() == 2);
  return node_->operands[1];
}

bool Formula::is_binary() const {
  switch (node_->kind) {
    case Kind::kAnd:
    case Kind::kOr:
    case Kind::kImplies:
    case Kind::kIff:
      return true;
    default:
      return false;
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::kFeature:
      return a.symbol() == b.symbol();
    case Formula::Kind::kCompare:
      return a.symbol() == b.symbol() && a.op() == b.op() &&
             a.value() == b.value();
    case Formula::Kind::kNot:
      return a.lhs() == b.lhs();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

FormulaSymbols collect_symbols(const Formula& formula) {
  FormulaSymbols out;
  collect(formula, out);
  return out;
}

bool evaluate(const Formula& formula, const FeaturePredicate& selected,
              const AttributeValuation& attributes) {
  return eval(formula, selected, attributes);
}

std::string to_string(const Formula& formula) {
  std::string out;
  print(formula, nullptr, out);
  return out;
}

std::string to_instantiated_string(const Formula& formula,
                                   const AttributeValuation& attributes) {
  std::string out;
  print(formula, &attributes, out);
  return out;
}

}  // namespace fmselect
