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

// The .fm text format.
//
//   model        := "model" IDENT decl*
//   decl         := featureTree | attrDecl | constraintDecl
//   featureTree  := ("root" | "mandatory" | "optional") IDENT block?
//   block        := "{" (featureTree | group)* "}"
//   group        := ("xor" | "or") "{" featureTree+ "}"
//   attrDecl     := "attribute" IDENT ":" "int"
//   constraintDecl := "constraint" LABEL ":" formula
//
// Formulas use, from loosest to tightest binding, "iff", "implies", "or",
// "and", "not", and atoms: a feature name, "IDENT CMP INT" with CMP one of
// < <= > >= ==, or a parenthesized formula. All binary operators associate
// to the left. '#' starts a comment that runs to the end of the line.
// Identifiers are ASCII letters, digits and '_' and do not start with a
// digit; labels may also contain '.' and start with a digit.

#ifndef FMSELECT_DSL_H_
#define FMSELECT_DSL_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fmselect/errors.h"
#include "fmselect/feature_model.h"
#include "fmselect/formula.h"

namespace fmselect {

struct SourceSpan {
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based
  std::size_t length = 0;  // characters
  std::size_t offset = 0;  // byte offset of the first character

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct ParseDiagnostic {
  enum class Kind {
    kSyntax,
    kUnknownKeyword,
    kDuplicateName,
    kUndersizedGroup,
    kUnknownSymbol,
    kInvalidModel,
  };
  SourceSpan span;
  std::string message;
  Kind kind = Kind::kSyntax;
};
std::string_view to_string(ParseDiagnostic::Kind kind);

// "line:column: Kind: message"
std::string format_diagnostic(const ParseDiagnostic& diagnostic);

class ParseError : public Error {
 public:
  explicit ParseError(std::vector<ParseDiagnostic> diagnostics);
  const std::vector<ParseDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<ParseDiagnostic> diagnostics_;
};

// Parses and validates a model. Errors in independent declarations are all
// collected before throwing ParseError; on success the model is well formed.
FeatureModel parse_model(std::string_view text);

// Parses a single formula such as "Classification and Samplesize < 100000".
Formula parse_formula(std::string_view text);

// Canonical text: two-space indentation, children in declaration order,
// attributes in declaration order, constraints last and sorted by label.
std::string serialize_model(const FeatureModel& model);

// Orders labels like "C2.10" after "C2.9": digit runs compare numerically.
bool label_less(std::string_view a, std::string_view b);

class InvalidHighlight : public Error {
 public:
  using Error::Error;
};

// Graphviz digraph. Mandatory edges end in a filled dot, optional ones in a
// hollow dot; group edges are undecorated, labeled "xor"/"or", and each group
// is wrapped in a cluster carrying the same label. Features selected in
// `highlight` are filled. Throws InvalidHighlight if `highlight` is not a
// valid configuration.
std::string export_dot(const FeatureModel& model,
                       const std::optional<Configuration>& highlight = std::nullopt);

}  // namespace fmselect

#endif  // FMSELECT_DSL_H_
