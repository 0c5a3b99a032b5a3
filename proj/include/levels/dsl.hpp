// Copyright 2026 The Levels Authors
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Text format (.sol) for structures of levels.
///
///     file      := structure+
///     structure := "structure" IDENT "{" level+ denote* "}"
///     level     := "level" INT "{" member+ "}"
///     member    := ("entity" | "rel") IDENT ["of" IDENT] ["[" attr {"," attr} "]"] ";"
///     attr      := "in" | "out" | "opaque" | "alt" "=" IDENT | "p" "=" NUMBER
///     denote    := "denote" IDENT "=>" IDENT ";"
///     NUMBER    := decimal in [0,1] | INT "/" INT
///
/// "#" starts a comment that runs to the end of the line.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "levels/error.hpp"
#include "levels/rational.hpp"
#include "levels/structure.hpp"

namespace levels::dsl {

struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t length = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { Error, Warning };

struct ParseDiagnostic {
  SourceSpan span;
  std::string message;
  Severity severity = Severity::Error;

  std::string to_string() const {
    return std::to_string(span.line) + ":" + std::to_string(span.column) + ": " +
           (severity == Severity::Error ? "error: " : "warning: ") + message;
  }
};

struct ParseResult {
  std::vector<Structure> structures;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const {
    for (const auto& d : diagnostics) {
      if (d.severity == Severity::Error) return false;
    }
    return true;
  }
};

namespace detail {

enum class TokenKind { Identifier, Number, Punct, End, Invalid };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string_view text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view source) : src_(source) {}

  Token next() {
    skip_trivia();
    Token tok;
    tok.span = SourceSpan{line_, column_, 0};
    if (pos_ >= src_.size()) {
      tok.kind = TokenKind::End;
      return tok;
    }
    const std::size_t start = pos_;
    const char c = src_[pos_];
    if (is_alpha(c)) {
      while (pos_ < src_.size() && (is_alpha(src_[pos_]) || is_digit(src_[pos_]) || src_[pos_] == '_')) advance();
      tok.kind = TokenKind::Identifier;
    } else if (is_digit(c)) {
      while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
      if (pos_ + 1 < src_.size() && (src_[pos_] == '.' || src_[pos_] == '/') && is_digit(src_[pos_ + 1])) {
        advance();
        while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
      }
      tok.kind = TokenKind::Number;
    } else if (c == '=' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      advance();
      advance();
      tok.kind = TokenKind::Punct;
    } else if (c == '{' || c == '}' || c == '[' || c == ']' || c == ',' || c == ';' || c == '=') {
      advance();
      tok.kind = TokenKind::Punct;
    } else {
      advance();
      tok.kind = TokenKind::Invalid;
    }
    tok.text = src_.substr(start, pos_ - start);
    tok.span.length = pos_ - start;
    return tok;
  }

 private:
  static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

struct SyntaxError {
  ParseDiagnostic diagnostic;
};

/// Recursive-descent parser. Syntax errors abort via SyntaxError; semantic
/// problems are collected and parsing continues.
class Parser {
 public:
  explicit Parser(std::string_view source) : lexer_(source) { tok_ = lexer_.next(); }

  ParseResult run() {
    ParseResult result;
    try {
      do {
        parse_structure(result);
      } while (tok_.kind != TokenKind::End);
    } catch (const SyntaxError& e) {
      result.diagnostics.push_back(e.diagnostic);
    }
    if (!result.ok()) result.structures.clear();
    return result;
  }

 private:
  [[noreturn]] void fail(const Token& at, const std::string& message) {
    throw SyntaxError{ParseDiagnostic{at.span, message, Severity::Error}};
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case TokenKind::End: return "end of input";
      case TokenKind::Invalid: return "invalid character";
      default: return "'" + std::string(t.text) + "'";
    }
  }

  Token take() {
    Token t = tok_;
    tok_ = lexer_.next();
    return t;
  }

  bool at_word(std::string_view word) const { return tok_.kind == TokenKind::Identifier && tok_.text == word; }
  bool at_punct(std::string_view p) const { return tok_.kind == TokenKind::Punct && tok_.text == p; }

  Token expect_word(std::string_view word) {
    if (!at_word(word)) fail(tok_, "expected '" + std::string(word) + "', found " + describe(tok_));
    return take();
  }

  Token expect_punct(std::string_view p) {
    if (!at_punct(p)) fail(tok_, "expected '" + std::string(p) + "', found " + describe(tok_));
    return take();
  }

  Token expect_identifier(std::string_view what) {
    if (tok_.kind != TokenKind::Identifier) fail(tok_, "expected " + std::string(what) + ", found " + describe(tok_));
    if (is_reserved_word(tok_.text)) {
      fail(tok_, "'" + std::string(tok_.text) + "' is a reserved word and cannot name " + std::string(what));
    }
    return take();
  }

  void semantic(std::vector<ParseDiagnostic>& out, const SourceSpan& span, std::string message) {
    out.push_back(ParseDiagnostic{span, std::move(message), Severity::Error});
  }

  void parse_structure(ParseResult& result) {
    expect_word("structure");
    const Token name = expect_identifier("a structure name");
    expect_punct("{");

    Structure s;
    s.name = std::string(name.text);
    std::map<std::string, SourceSpan, std::less<>> spans;
    spans[s.name] = name.span;
    std::size_t errors_before = result.diagnostics.size();
    bool levels_ok = true;

    if (!at_word("level")) fail(tok_, "expected 'level', found " + describe(tok_));
    while (at_word("level")) {
      const Token kw = take();
      if (tok_.kind != TokenKind::Number) fail(tok_, "expected a level number, found " + describe(tok_));
      const Token number = take();
      const auto declared = Rational::parse(number.text);
      if (!declared || declared->denominator() != 1 || declared->numerator() > 1'000'000) {
        fail(number, "level number " + std::string(number.text) + " is not a small positive integer");
      }
      const std::size_t level_no = declared->numerator();
      const std::size_t expected = s.levels.size() + 1;
      SourceSpan header{kw.span.line, kw.span.column, number.span.column + number.span.length - kw.span.column};
      if (number.span.line != kw.span.line) header.length = kw.span.length;

      bool keep = levels_ok;
      if (level_no != expected) {
        keep = false;
        levels_ok = false;
        if (level_no > expected) {
          semantic(result.diagnostics, header, "level " + std::to_string(expected) + " missing");
        } else {
          semantic(result.diagnostics, header,
                   "level " + std::to_string(level_no) + " declared out of order (expected level " +
                       std::to_string(expected) + ")");
        }
      }
      if (keep) s.levels.emplace_back();

      expect_punct("{");
      if (!at_word("entity") && !at_word("rel")) fail(tok_, "expected 'entity' or 'rel', found " + describe(tok_));
      while (at_word("entity") || at_word("rel")) {
        Element e = parse_member(result, spans);
        e.level = static_cast<int>(level_no);
        if (keep) s.levels.back().members.push_back(std::move(e));
      }
      expect_punct("}");
    }

    std::vector<std::pair<Denotation, SourceSpan>> denote_spans;
    while (at_word("denote")) {
      const Token kw = take();
      const Token outcome = expect_identifier("an outcome");
      expect_punct("=>");
      const Token relation = expect_identifier("a relationship");
      const Token semi = expect_punct(";");
      SourceSpan span{kw.span.line, kw.span.column, kw.span.length};
      if (semi.span.line == kw.span.line) span.length = semi.span.column + 1 - kw.span.column;
      Denotation d{std::string(outcome.text), std::string(relation.text)};
      s.denotations.push_back(d);
      denote_spans.emplace_back(d, span);
    }
    const Token close = expect_punct("}");

    if (levels_ok && result.diagnostics.size() == errors_before) {
      for (const Violation& v : validate(s)) {
        SourceSpan span = name.span;
        if (v.kind == ViolationKind::InvalidDenotation || v.kind == ViolationKind::NonUnivocal) {
          for (const auto& [d, sp] : denote_spans) {
            if (d.outcome == v.element || d.relation == v.element) span = sp;
          }
        } else if (v.kind == ViolationKind::EmptyStructure || v.kind == ViolationKind::EmptyLevel ||
                   v.kind == ViolationKind::MissingPivotalRelation) {
          span = name.span;
        } else if (auto it = spans.find(v.element); it != spans.end()) {
          span = it->second;
        }
        semantic(result.diagnostics, span, v.message);
      }
    }
    (void)close;
    if (result.diagnostics.size() == errors_before) result.structures.push_back(std::move(s));
  }

  Element parse_member(ParseResult& result, std::map<std::string, SourceSpan, std::less<>>& spans) {
    const Token kw = take();
    Element e;
    e.kind = kw.text == "rel" ? ElementKind::Relationship : ElementKind::Entity;
    const Token id = expect_identifier(e.is_relationship() ? "a relationship name" : "an entity name");
    e.id = std::string(id.text);
    if (!spans.contains(e.id)) spans[e.id] = id.span;

    if (at_word("of")) {
      take();
      e.parent = std::string(expect_identifier("a parent name").text);
    }
    if (at_punct("[")) {
      take();
      bool have_role = false;
      do {
        parse_attribute(result, e, have_role);
      } while (at_punct(",") && (take(), true));
      expect_punct("]");
    }
    expect_punct(";");
    return e;
  }

  void parse_attribute(ParseResult& result, Element& e, bool& have_role) {
    if (tok_.kind != TokenKind::Identifier) fail(tok_, "expected an attribute, found " + describe(tok_));
    const Token attr = take();
    auto duplicate = [&](std::string_view what) {
      semantic(result.diagnostics, attr.span, "duplicate " + std::string(what) + " attribute on '" + e.id + "'");
    };
    if (attr.text == "in" || attr.text == "out") {
      if (have_role) duplicate("role");
      have_role = true;
      e.role = attr.text == "in" ? Role::Input : Role::Output;
    } else if (attr.text == "opaque") {
      if (e.opaque) duplicate("opaque");
      e.opaque = true;
    } else if (attr.text == "alt") {
      expect_punct("=");
      const Token tag = expect_identifier("a group tag");
      if (e.alt_group) duplicate("alt");
      e.alt_group = std::string(tag.text);
    } else if (attr.text == "p") {
      expect_punct("=");
      if (tok_.kind != TokenKind::Number) fail(tok_, "expected a probability, found " + describe(tok_));
      const Token number = take();
      const auto value = Probability::parse(number.text);
      if (!value) {
        semantic(result.diagnostics, number.span,
                 "probability " + std::string(number.text) + " is not a number in [0, 1]");
      } else {
        if (e.probability) duplicate("p");
        e.probability = *value;
      }
    } else {
      fail(attr, "unknown attribute " + describe(attr));
    }
  }

  Lexer lexer_;
  Token tok_;
};

inline void write_member(std::ostringstream& os, const Element& e) {
  os << "    " << (e.is_relationship() ? "rel " : "entity ") << e.id;
  if (e.parent) os << " of " << *e.parent;
  std::vector<std::string> attrs;
  if (e.role == Role::Input) attrs.emplace_back("in");
  if (e.role == Role::Output) attrs.emplace_back("out");
  if (e.opaque) attrs.emplace_back("opaque");
  if (e.alt_group) attrs.push_back("alt=" + *e.alt_group);
  if (e.probability) attrs.push_back("p=" + e.probability->to_string());
  if (!attrs.empty()) {
    os << " [";
    for (std::size_t i = 0; i < attrs.size(); ++i) os << (i ? ", " : "") << attrs[i];
    os << "]";
  }
  os << ";\n";
}

}  // namespace detail

/// Parses every structure in `source`. Never throws on malformed input; on
/// failure the structure list is empty and at least one error is reported.
inline ParseResult parse(std::string_view source) { return detail::Parser(source).run(); }

/// Canonical text: two-space indentation, insertion order, fractions.
inline std::string serialize(const Structure& s) {
  require_valid(s);
  std::ostringstream os;
  os << "structure " << s.name << " {\n";
  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    os << "  level " << (i + 1) << " {\n";
    for (const Element& e : s.levels[i].members) detail::write_member(os, e);
    os << "  }\n";
  }
  for (const Denotation& d : s.denotations) os << "  denote " << d.outcome << " => " << d.relation << ";\n";
  os << "}\n";
  return os.str();
}

/// Structures separated by one blank line.
inline std::string serialize(const std::vector<Structure>& structures) {
  std::string out;
  for (std::size_t i = 0; i < structures.size(); ++i) {
    if (i) out += "\n";
    out += serialize(structures[i]);
  }
  return out;
}

/// Parses text expected to be valid; throws InvalidStructure with the first
/// diagnostic otherwise.
inline std::vector<Structure> parse_or_throw(std::string_view source) {
  ParseResult r = parse(source);
  if (!r.ok()) throw Error(ErrorCode::InvalidStructure, r.diagnostics.front().to_string());
  return std::move(r.structures);
}

}  // namespace levels::dsl
