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

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <utility>

#include "fmselect/dsl.h"

namespace fmselect {

std::string_view to_string(ParseDiagnostic::Kind kind) {
  switch (kind) {
    case ParseDiagnostic::Kind::kSyntax:
      return "Syntax";
    case ParseDiagnostic::Kind::kUnknownKeyword:
      return "UnknownKeyword";
    case ParseDiagnostic::Kind::kDuplicateName:
      return "DuplicateName";
    case ParseDiagnostic::Kind::kUndersizedGroup:
      return "UndersizedGroup";
    case ParseDiagnostic::Kind::kUnknownSymbol:
      return "UnknownSymbol";
    case ParseDiagnostic::Kind::kInvalidModel:
      return "InvalidModel";
  }
  return "?";
}

std::string format_diagnostic(const ParseDiagnostic& d) {
  return std::to_string(d.span.line) + ":" + std::to_string(d.span.column) +
         ": " + std::string(to_string(d.kind)) + ": " + d.message;
}

namespace {

std::string summarize(const std::vector<ParseDiagnostic>& diagnostics) {
  std::string out = "parse failed";
  for (const auto& d : diagnostics) out += "\n  " + format_diagnostic(d);
  return out;
}

}  // namespace

ParseError::ParseError(std::vector<ParseDiagnostic> diagnostics)
    : Error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

namespace {

enum class Tok { kWord, kLBrace, kRBrace, kLParen, kRParen, kColon, kCmp, kInvalid, kEnd };

struct Token {
  Tok type;
  std::string_view text;
  SourceSpan span;
  bool starts_line = false;
};

constexpr std::array<std::string_view, 13> kKeywords = {
    "model", "root", "mandatory", "optional", "xor", "or", "attribute",
    "int", "constraint", "and", "not", "implies", "iff"};

bool is_keyword(std::string_view w) {
  return std::find(kKeywords.begin(), kKeywords.end(), w) != kKeywords.end();
}

bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '.';
}

bool is_identifier(std::string_view w) {
  if (w.empty() || (w[0] >= '0' && w[0] <= '9')) return false;
  return std::all_of(w.begin(), w.end(),
                     [](char c) { return c != '.' && is_word_char(c); });
}

bool is_continuation(unsigned char c) { return (c & 0xC0) == 0x80; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    bool line_start = true;
    while (true) {
      skip_space_and_comments(line_start);
      const SourceSpan start = here();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::kEnd, {}, start, line_start});
        return out;
      }
      const char c = text_[pos_];
      Tok type = Tok::kInvalid;
      if (is_word_char(c) || (c == '-' && pos_ + 1 < text_.size() &&
                              text_[pos_ + 1] >= '0' && text_[pos_ + 1] <= '9')) {
        advance();
        while (pos_ < text_.size() && is_word_char(text_[pos_])) advance();
        type = Tok::kWord;
      } else if (c == '<' || c == '>' || c == '=') {
        advance();
        if (pos_ < text_.size() && text_[pos_] == '=') advance();
        type = (c == '=' && text_.substr(start.offset, pos_ - start.offset) == "=")
                   ? Tok::kInvalid
                   : Tok::kCmp;
      } else {
        switch (c) {
          case '{':
            type = Tok::kLBrace;
            break;
          case '}':
            type = Tok::kRBrace;
            break;
          case '(':
            type = Tok::kLParen;
            break;
          case ')':
            type = Tok::kRParen;
            break;
          case ':':
            type = Tok::kColon;
            break;
          default:
            type = Tok::kInvalid;
        }
        advance();
        // Consume the rest of a multi-byte character.
        while (pos_ < text_.size() &&
               is_continuation(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }
      SourceSpan span = start;
      span.length = column_ - start.column;
      out.push_back({type, text_.substr(start.offset, pos_ - start.offset), span,
                     line_start});
      line_start = false;
    }
  }

 private:
  SourceSpan here() const { return {line_, column_, 0, pos_}; }

  void advance() {
    ++pos_;
    while (pos_ < text_.size() &&
           is_continuation(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    ++column_;
  }

  void skip_space_and_comments(bool& line_start) {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++pos_;
        ++line_;
        column_ = 1;
        line_start = true;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

// Thrown after a diagnostic has been recorded; caught at a recovery point.
struct Recover {};

struct SymbolUse {
  std::string name;
  bool attribute;
  SourceSpan span;
  std::string label;
};

class Parser {
 public:
  explicit Parser(std::string_view text)
      : text_(text), tokens_(Lexer(text).run()), builder_("") {}

  FeatureModel parse_model() {
    if (is_word("model")) {
      next();
      model_name_ = expect_identifier("model name");
    } else {
      error(ParseDiagnostic::Kind::kSyntax, peek().span,
            "expected 'model <name>' at start of input");
    }
    while (peek().type != Tok::kEnd) {
      try {
        parse_declaration();
      } catch (const Recover&) {
        synchronize_top();
      }
    }
    finish_checks();
    if (!diagnostics_.empty()) throw ParseError(std::move(diagnostics_));
    FeatureModel model = std::move(builder_).build();
    model.name = model_name_;
    const auto report = validate_model(model);
    for (const auto& v : report) {
      error(ParseDiagnostic::Kind::kInvalidModel, SourceSpan{}, v.message);
    }
    if (!diagnostics_.empty()) throw ParseError(std::move(diagnostics_));
    return model;
  }

  Formula parse_standalone_formula() {
    std::optional<Formula> f;
    try {
      f = parse_formula();
      if (peek().type != Tok::kEnd) {
        error(ParseDiagnostic::Kind::kSyntax, peek().span,
              "unexpected '" + std::string(peek().text) + "' after formula");
      }
    } catch (const Recover&) {
    }
    if (!diagnostics_.empty()) throw ParseError(std::move(diagnostics_));
    return *f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(index_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() {
    const Token& t = tokens_[index_];
    if (index_ + 1 < tokens_.size()) ++index_;
    return t;
  }
  bool is_word(std::string_view w, std::size_t ahead = 0) const {
    return peek(ahead).type == Tok::kWord && peek(ahead).text == w;
  }

  void error(ParseDiagnostic::Kind kind, SourceSpan span, std::string message) {
    diagnostics_.push_back({span, std::move(message), kind});
  }
  [[noreturn]] void fail(ParseDiagnostic::Kind kind, SourceSpan span,
                         std::string message) {
    error(kind, span, std::move(message));
    throw Recover{};
  }

  std::string describe(const Token& t) const {
    if (t.type == Tok::kEnd) return "end of input";
    return "'" + std::string(t.text) + "'";
  }

  void expect(Tok type, std::string_view what) {
    if (peek().type != type) {
      fail(ParseDiagnostic::Kind::kSyntax, peek().span,
           "expected " + std::string(what) + ", found " + describe(peek()));
    }
    next();
  }

  std::string expect_identifier(std::string_view what) {
    const Token& t = peek();
    if (t.type != Tok::kWord || !is_identifier(t.text) || is_keyword(t.text)) {
      fail(ParseDiagnostic::Kind::kSyntax, t.span,
           "expected " + std::string(what) + " (identifier), found " + describe(t));
    }
    next();
    return std::string(t.text);
  }

  SourceSpan span_between(const SourceSpan& first, const Token& last) const {
    SourceSpan span = first;
    const std::size_t end = last.span.offset + last.text.size();
    span.length = 0;
    for (std::size_t i = first.offset; i < end && i < text_.size(); ++i) {
      if (!is_continuation(static_cast<unsigned char>(text_[i]))) ++span.length;
    }
    return span;
  }

  void parse_declaration() {
    const Token& t = peek();
    if (t.type != Tok::kWord) {
      fail(ParseDiagnostic::Kind::kSyntax, t.span,
           "expected a declaration, found " + describe(t));
    }
    if (t.text == "root") {
      parse_feature(std::nullopt, std::nullopt);
    } else if (t.text == "mandatory" || t.text == "optional") {
      fail(ParseDiagnostic::Kind::kSyntax, t.span,
           "top-level features must be declared with 'root'");
    } else if (t.text == "attribute") {
      parse_attribute();
    } else if (t.text == "constraint") {
      parse_constraint();
    } else if (t.text == "xor" || t.text == "or") {
      fail(ParseDiagnostic::Kind::kSyntax, t.span,
           "group '" + std::string(t.text) + "' outside a feature block");
    } else {
      fail(ParseDiagnostic::Kind::kUnknownKeyword, t.span,
           "unknown keyword '" + std::string(t.text) + "'");
    }
  }

  // Skips to the next top-level declaration keyword that begins a line.
  void synchronize_top() {
    next();
    while (peek().type != Tok::kEnd) {
      const Token& t = peek();
      if (t.starts_line && t.type == Tok::kWord &&
          (t.text == "root" || t.text == "attribute" || t.text == "constraint")) {
        return;
      }
      next();
    }
  }

  // Inside a block: skips to the next line-leading feature or group keyword
  // at the current nesting level, or to the closing brace.
  void synchronize_block() {
    int depth = 0;
    next();
    while (peek().type != Tok::kEnd) {
      const Token& t = peek();
      if (t.type == Tok::kRBrace) {
        if (depth == 0) return;
        --depth;
      } else if (t.type == Tok::kLBrace) {
        ++depth;
      } else if (depth == 0 && t.starts_line && t.type == Tok::kWord &&
                 (t.text == "mandatory" || t.text == "optional" ||
                  t.text == "xor" || t.text == "or")) {
        return;
      } else if (t.starts_line && t.type == Tok::kWord &&
                 (t.text == "root" || t.text == "attribute" ||
                  t.text == "constraint")) {
        return;
      }
      next();
    }
  }

  void declare_feature_name(const std::string& name, const SourceSpan& span) {
    auto [it, inserted] = feature_spans_.emplace(name, span);
    if (!inserted) {
      error(ParseDiagnostic::Kind::kDuplicateName, span,
            "feature '" + name + "' already declared at line " +
                std::to_string(it->second.line));
    }
  }

  // featureTree := ("root" | "mandatory" | "optional") IDENT block?
  void parse_feature(std::optional<FeatureId> parent,
                     std::optional<std::size_t> group) {
    const Token kw = next();
    const bool is_root = kw.text == "root";
    if (is_root && parent) {
      fail(ParseDiagnostic::Kind::kSyntax, kw.span,
           "'root' is only allowed at top level");
    }
    const Token& name_token = peek();
    const std::string name = expect_identifier("feature name");
    declare_feature_name(name, name_token.span);
    const Variation variation =
        kw.text == "mandatory" ? Variation::kMandatory : Variation::kOptional;
    FeatureId id;
    if (is_root) {
      if (root_span_) {
        error(ParseDiagnostic::Kind::kSyntax, kw.span,
              "second root '" + name + "'; a model has exactly one root");
      } else {
        root_span_ = kw.span;
      }
      id = builder_.root(name);
    } else if (group) {
      id = builder_.member(*group, name, variation);
    } else {
      id = builder_.child(*parent, name, variation);
    }
    if (peek().type == Tok::kLBrace) parse_block(id);
  }

  // block := "{" (featureTree | group)* "}"
  void parse_block(FeatureId parent) {
    const Token open = next();
    while (peek().type != Tok::kRBrace) {
      if (peek().type == Tok::kEnd) {
        fail(ParseDiagnostic::Kind::kSyntax, open.span,
             "unterminated block: missing '}'");
      }
      try {
        const Token& t = peek();
        if (t.type == Tok::kWord && (t.text == "mandatory" || t.text == "optional")) {
          parse_feature(parent, std::nullopt);
        } else if (t.type == Tok::kWord && (t.text == "xor" || t.text == "or")) {
          parse_group(parent);
        } else if (t.type == Tok::kWord && t.text == "root") {
          fail(ParseDiagnostic::Kind::kSyntax, t.span,
               "'root' is only allowed at top level");
        } else if (t.type == Tok::kWord && !is_keyword(t.text)) {
          fail(ParseDiagnostic::Kind::kUnknownKeyword, t.span,
               "unknown keyword '" + std::string(t.text) +
                   "'; expected mandatory, optional, xor or or");
        } else {
          fail(ParseDiagnostic::Kind::kSyntax, t.span,
               "expected a feature or group, found " + describe(t));
        }
      } catch (const Recover&) {
        synchronize_block();
        const Token& t = peek();
        if (t.starts_line && t.type == Tok::kWord &&
            (t.text == "root" || t.text == "attribute" || t.text == "constraint")) {
          throw Recover{};
        }
      }
    }
    next();
  }

  // group := ("xor" | "or") "{" featureTree+ "}"
  void parse_group(FeatureId parent) {
    const Token kw = next();
    const GroupKind kind = kw.text == "xor" ? GroupKind::kXor : GroupKind::kOr;
    const std::size_t group = builder_.group(parent, kind);
    expect(Tok::kLBrace, "'{' after group keyword");
    std::size_t members = 0;
    while (peek().type != Tok::kRBrace) {
      const Token& t = peek();
      if (t.type == Tok::kEnd) {
        fail(ParseDiagnostic::Kind::kSyntax, kw.span,
             "unterminated group: missing '}'");
      }
      if (t.type == Tok::kWord && (t.text == "mandatory" || t.text == "optional")) {
        try {
          parse_feature(parent, group);
          ++members;
        } catch (const Recover&) {
          synchronize_block();
        }
      } else if (t.type == Tok::kWord && !is_keyword(t.text)) {
        error(ParseDiagnostic::Kind::kUnknownKeyword, t.span,
              "unknown keyword '" + std::string(t.text) +
                  "'; group members start with mandatory or optional");
        synchronize_block();
      } else {
        error(ParseDiagnostic::Kind::kSyntax, t.span,
              "expected a group member, found " + describe(t));
        synchronize_block();
      }
    }
    const Token& close = next();
    if (members < 2) {
      error(ParseDiagnostic::Kind::kUndersizedGroup, span_between(kw.span, close),
            std::string(to_string(kind)) + " group has " + std::to_string(members) +
                " member(s); at least 2 required");
    }
  }

  // attrDecl := "attribute" IDENT ":" "int"
  void parse_attribute() {
    next();
    const Token& name_token = peek();
    const std::string name = expect_identifier("attribute name");
    expect(Tok::kColon, "':'");
    if (!is_word("int")) {
      fail(ParseDiagnostic::Kind::kSyntax, peek().span,
           "expected attribute type 'int', found " + describe(peek()));
    }
    next();
    auto [it, inserted] = attribute_spans_.emplace(name, name_token.span);
    if (!inserted) {
      error(ParseDiagnostic::Kind::kDuplicateName, name_token.span,
            "attribute '" + name + "' already declared at line " +
                std::to_string(it->second.line));
      return;
    }
    builder_.attribute(name);
  }

  // constraintDecl := "constraint" LABEL ":" formula
  void parse_constraint() {
    next();
    const Token& label_token = peek();
    if (label_token.type != Tok::kWord || is_keyword(label_token.text)) {
      fail(ParseDiagnostic::Kind::kSyntax, label_token.span,
           "expected constraint label, found " + describe(label_token));
    }
    const std::string label(label_token.text);
    next();
    expect(Tok::kColon, "':' after constraint label");
    current_label_ = label;
    Formula f = parse_formula();
    const Token& t = peek();
    if (t.type != Tok::kEnd &&
        !(t.type == Tok::kWord && t.starts_line &&
          (t.text == "root" || t.text == "attribute" || t.text == "constraint"))) {
      fail(ParseDiagnostic::Kind::kSyntax, t.span,
           "unexpected " + describe(t) + " after formula of " + label);
    }
    auto [it, inserted] = label_spans_.emplace(label, label_token.span);
    if (!inserted) {
      error(ParseDiagnostic::Kind::kDuplicateName, label_token.span,
            "constraint label '" + label + "' already used at line " +
                std::to_string(it->second.line));
      return;
    }
    builder_.constraint(label, std::move(f));
  }

  Formula parse_formula() { return parse_iff(); }

  Formula parse_iff() {
    Formula f = parse_implies();
    while (is_word("iff")) {
      next();
      f = Formula::iff(std::move(f), parse_implies());
    }
    return f;
  }

  Formula parse_implies() {
    Formula f = parse_or();
    while (is_word("implies")) {
      next();
      f = Formula::implies(std::move(f), parse_or());
    }
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (is_word("or")) {
      next();
      f = Formula::disj(std::move(f), parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (is_word("and")) {
      next();
      f = Formula::conj(std::move(f), parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    if (is_word("not")) {
      next();
      return Formula::negate(parse_unary());
    }
    return parse_atom();
  }

  Formula parse_atom() {
    const Token& t = peek();
    if (t.type == Tok::kLParen) {
      next();
      Formula f = parse_formula();
      expect(Tok::kRParen, "')'");
      return f;
    }
    const SourceSpan span = t.span;
    const std::string name = expect_identifier("feature, attribute or '('");
    if (peek().type != Tok::kCmp) {
      uses_.push_back({name, false, span, current_label_});
      return Formula::feature(name);
    }
    const Token op_token = next();
    CompareOp op = CompareOp::kEqual;
    if (op_token.text == "<") op = CompareOp::kLess;
    else if (op_token.text == "<=") op = CompareOp::kLessEqual;
    else if (op_token.text == ">") op = CompareOp::kGreater;
    else if (op_token.text == ">=") op = CompareOp::kGreaterEqual;
    const Token& value_token = peek();
    std::int64_t value = 0;
    const char* first = value_token.text.data();
    const char* last = first + value_token.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (value_token.type != Tok::kWord || ec != std::errc() || ptr != last) {
      fail(ParseDiagnostic::Kind::kSyntax, value_token.span,
           "expected an integer after '" + std::string(op_token.text) +
               "', found " + describe(value_token));
    }
    next();
    uses_.push_back({name, true, span, current_label_});
    return Formula::compare(name, op, value);
  }

  void finish_checks() {
    if (!root_span_ && diagnostics_.empty()) {
      error(ParseDiagnostic::Kind::kSyntax, peek().span, "model has no root feature");
    }
    for (const auto& [name, span] : attribute_spans_) {
      if (feature_spans_.contains(name)) {
        error(ParseDiagnostic::Kind::kDuplicateName, span,
              "attribute '" + name + "' has the same name as a feature");
      }
    }
    for (const auto& use : uses_) {
      if (use.attribute && !attribute_spans_.contains(use.name)) {
        error(ParseDiagnostic::Kind::kUnknownSymbol, use.span,
              "constraint " + use.label + " compares undeclared attribute '" +
                  use.name + "'");
      } else if (!use.attribute && !feature_spans_.contains(use.name)) {
        error(ParseDiagnostic::Kind::kUnknownSymbol, use.span,
              "constraint " + use.label + " references undeclared feature '" +
                  use.name + "'");
      }
    }
    std::stable_sort(diagnostics_.begin(), diagnostics_.end(),
                     [](const ParseDiagnostic& a, const ParseDiagnostic& b) {
                       return a.span.offset < b.span.offset;
                     });
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  ModelBuilder builder_;
  std::string model_name_;
  std::optional<SourceSpan> root_span_;
  std::map<std::string, SourceSpan> feature_spans_;
  std::map<std::string, SourceSpan> attribute_spans_;
  std::map<std::string, SourceSpan> label_spans_;
  std::vector<SymbolUse> uses_;
  std::string current_label_;
  std::vector<ParseDiagnostic> diagnostics_;
};

}  // namespace

FeatureModel parse_model(std::string_view text) {
  return Parser(text).parse_model();
}

Formula parse_formula(std::string_view text) {
  return Parser(text).parse_standalone_formula();
}

}  // namespace fmselect
