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

#ifndef RECONFCHECK_LEXER_HPP_
#define RECONFCHECK_LEXER_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "reconfcheck/errors.hpp"

namespace reconf::detail {

enum class TokenKind { Ident, Int, String, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;  // identifier, punctuation, or decoded string literal
  std::uint64_t number = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

enum CommentStyle : unsigned {
  kSlashComments = 1u,  // // to end of line
  kHashComments = 2u,   // # to end of line
};

std::vector<Token> tokenize(std::string_view text, unsigned comments);

/// Cursor over a token vector with the usual expect/accept helpers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at_end() const { return peek().kind == TokenKind::End; }

  bool is_punct(std::string_view p, std::size_t ahead = 0) const;
  bool is_keyword(std::string_view k, std::size_t ahead = 0) const;
  bool accept_punct(std::string_view p);
  bool accept_keyword(std::string_view k);
  void expect_punct(std::string_view p);
  void expect_keyword(std::string_view k);
  std::string expect_ident(std::string_view what = "identifier");
  std::int64_t expect_int(bool allow_negative);

  [[noreturn]] void fail(const std::string& msg) const;
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string describe(const Token& t);

}  // namespace reconf::detail

#endif  // RECONFCHECK_LEXER_HPP_
