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

// Propositional formulas over feature literals and integer attribute
// comparisons. Formulas are immutable and share structure, so copies are
// cheap and safe to hand across threads.

#ifndef FMSELECT_FORMULA_H_
#define FMSELECT_FORMULA_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace fmselect {

using AttributeValuation = std::map<std::string, std::int64_t, std::less<>>;

enum class CompareOp { kLess, kLessEqual, kGreater, kGreaterEqual, kEqual };

std::string_view to_string(CompareOp op);
bool compare(std::int64_t lhs, CompareOp op, std::int64_t rhs);

class Formula {
 public:
  enum class Kind { kFeature, kCompare, kNot, kAnd, kOr, kImplies, kIff };

  static Formula feature(std::string name);
  static Formula compare(std::string attribute, CompareOp op,
                         std::int64_t value);
  static Formula negate(Formula operand);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula iff(Formula lhs, Formula rhs);

  Kind kind() const;
  // Feature name for kFeature, attribute name for kCompare.
  const std::string& symbol() const;
  CompareOp op() const;
  std::int64_t value() const;
  // Operand of kNot, left operand of the binary kinds.
  const Formula& lhs() const;
  const Formula& rhs() const;

  bool is_binary() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);
  static Formula binary(Kind kind, Formula lhs, Formula rhs);
  std::shared_ptr<const Node> node_;
};

// Every feature literal and every compared attribute in the formula.
struct FormulaSymbols {
  std::set<std::string, std::less<>> features;
  std::set<std::string, std::less<>> attributes;
};
FormulaSymbols collect_symbols(const Formula& formula);

using FeaturePredicate = std::function<bool(std::string_view)>;

// Two-valued evaluation. Every compared attribute must be valued, whether or
// not its comparison decides the result; otherwise throws MissingAttribute.
bool evaluate(const Formula& formula, const FeaturePredicate& selected,
              const AttributeValuation& attributes);

// Canonical text with minimal parentheses. Binary operators associate to the
// left; the output re-parses to an equal formula.
std::string to_string(const Formula& formula);

// Like to_string, with each compared attribute annotated by its value, e.g.
// "Samplesize[299] > 50". Unvalued attributes print as "Samplesize[?]".
std::string to_instantiated_string(const Formula& formula,
                                   const AttributeValuation& attributes);

}  // namespace fmselect

#endif  // FMSELECT_FORMULA_H_
