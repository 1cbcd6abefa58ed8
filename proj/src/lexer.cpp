/*
 * Copyright (c) 2026, The reconfcheck Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "lexer.hpp"

#include <cctype>
#include <limits>

namespace reconf::detail {

namespace {

constexpr std::string_view kTwoCharPunct[] = {":=", "->", "!=", "<=", ">=",
                                              "=>"};
constexpr std::string_view kOneCharPunct = "{}()[].,:+-*=<>";

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

std::vector<Token> tokenize(std::string_view text, unsigned comments) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto error = [&](const std::string& msg) -> ParseError {
    return ParseError(msg, line, col);
  };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    bool slash = (comments & kSlashComments) && c == '/' &&
                 i + 1 < text.size() && text[i + 1] == '/';
    bool hash = (comments & kHashComments) && c == '#';
    if (slash || hash) {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }

    Token tok;
    tok.line = line;
    tok.column = col;

    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      tok.kind = TokenKind::Ident;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      std::uint64_t value = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        std::uint64_t digit = static_cast<std::uint64_t>(text[j] - '0');
        if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
          throw error("integer literal too large");
        }
        value = value * 10 + digit;
        ++j;
      }
      if (j < text.size() && ident_char(text[j])) {
        throw error("malformed number");
      }
      tok.kind = TokenKind::Int;
      tok.number = value;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (c == '"') {
      advance(1);
      std::string s;
      for (;;) {
        if (i >= text.size() || text[i] == '\n') {
          throw ParseError("unterminated string literal", tok.line, tok.column);
        }
        char d = text[i];
        if (d == '"') {
          advance(1);
          break;
        }
        if (d == '\\') {
          if (i + 1 >= text.size()) throw error("bad escape");
          char e = text[i + 1];
          switch (e) {
            case 'n': s += '\n'; break;
            case 't': s += '\t'; break;
            case '"': s += '"'; break;
            case '\\': s += '\\'; break;
            default: throw error(std::string("unknown escape \\") + e);
          }
          advance(2);
          continue;
        }
        s += d;
        advance(1);
      }
      tok.kind = TokenKind::String;
      tok.text = std::move(s);
    } else {
      std::string_view rest = text.substr(i);
      bool matched = false;
      for (auto p : kTwoCharPunct) {
        if (rest.substr(0, 2) == p) {
          tok.text = std::string(p);
          matched = true;
          break;
        }
      }
      if (!matched && kOneCharPunct.find(c) != std::string_view::npos) {
        tok.text = std::string(1, c);
        matched = true;
      }
      if (!matched) throw error(std::string("unexpected character '") + c + "'");
      tok.kind = TokenKind::Punct;
      advance(tok.text.size());
    }
    out.push_back(std::move(tok));
  }

  Token end;
  end.kind = TokenKind::End;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::String: return "string literal";
    case TokenKind::Int: return "'" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t k = pos_ + ahead;
  return k < tokens_.size() ? tokens_[k] : tokens_.back();
}

const Token& TokenStream::next() {
  const Token& t = peek();
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool TokenStream::is_punct(std::string_view p, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokenKind::Punct && t.text == p;
}

bool TokenStream::is_keyword(std::string_view k, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokenKind::Ident && t.text == k;
}

bool TokenStream::accept_punct(std::string_view p) {
  if (!is_punct(p)) return false;
  next();
  return true;
}

bool TokenStream::accept_keyword(std::string_view k) {
  if (!is_keyword(k)) return false;
  next();
  return true;
}

void TokenStream::expect_punct(std::string_view p) {
  if (!accept_punct(p)) {
    fail("expected '" + std::string(p) + "' but found " + describe(peek()));
  }
}

void TokenStream::expect_keyword(std::string_view k) {
  if (!accept_keyword(k)) {
    fail("expected '" + std::string(k) + "' but found " + describe(peek()));
  }
}

std::string TokenStream::expect_ident(std::string_view what) {
  if (peek().kind != TokenKind::Ident) {
    fail("expected " + std::string(what) + " but found " + describe(peek()));
  }
  return next().text;
}

std::int64_t TokenStream::expect_int(bool allow_negative) {
  bool negative = allow_negative && accept_punct("-");
  const Token& t = peek();
  if (t.kind != TokenKind::Int) {
    fail("expected integer but found " + describe(t));
  }
  constexpr auto kMax =
      static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
  if (t.number > kMax + (negative ? 1 : 0)) fail("integer out of range");
  next();
  if (negative) {
    return t.number == kMax + 1 ? std::numeric_limits<std::int64_t>::min()
                                : -static_cast<std::int64_t>(t.number);
  }
  return static_cast<std::int64_t>(t.number);
}

void TokenStream::fail(const std::string& msg) const { fail_at(peek(), msg); }

void TokenStream::fail_at(const Token& t, const std::string& msg) const {
  throw ParseError(msg, t.line, t.column);
}

}  // namespace reconf::detail
