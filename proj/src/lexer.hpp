#pragma once

// Shared tokenizer and expression grammar for the core and GP text formats.

#include <string>
#include <vector>

#include "tjit/syntax.hpp"

namespace tjit::detail {

struct Token {
  enum class Kind { Ident, Int, Str, Punct, End };
  Kind kind;
  std::string text;
  int line;
};

std::vector<Token> tokenize(const std::string& src, int first_line = 1);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t k = 0) const;
  Token next();
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool is(const std::string& punct_or_word, std::size_t k = 0) const;
  bool accept(const std::string& punct_or_word);
  void expect(const std::string& punct_or_word);
  std::string ident();
  [[noreturn]] void fail(const std::string& msg) const;

  std::size_t mark() const { return pos_; }
  void reset(std::size_t m) { pos_ = m; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

ExprP expr(TokenStream& ts);
BExprP bexpr(TokenStream& ts);
Value value(TokenStream& ts);

}  // namespace tjit::detail
