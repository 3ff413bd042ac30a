#pragma once

// Tokenizer and term parser shared by the program parser and the literal
// parsers for monadic values and distances.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "olr/parser.hpp"

namespace olr::detail {

enum class Tok {
  Ident,
  Number,
  Symbol,  // punctuation, text holds the symbol
  End,
};

struct Token {
  Tok kind;
  std::string text;
  Span at;
};

std::vector<Token> tokenize(std::string_view src);

class TermParser {
 public:
  TermParser(std::vector<Token> toks, const Signature& sig) : toks_(std::move(toks)), sig_(sig) {}

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_symbol(std::string_view s) const;
  bool at_ident(std::string_view s) const;
  bool accept_symbol(std::string_view s);
  void expect_symbol(std::string_view s);
  std::string expect_ident();
  bool at_end() const { return peek().kind == Tok::End; }
  [[noreturn]] void fail(const std::string& msg) const;

  Ty type();
  Term term();
  Comp comp();
  /// A value in operand position (atom or lambda).
  Value operand();

  /// Names bound by enclosing binders or declaration parameters.
  std::vector<std::string> scope;
  /// Earlier closed value declarations, inlined on reference.
  std::map<std::string, Value> globals;

 private:
  Ty type_prod();
  Ty type_atom();
  Term atom();
  Value lambda();
  Value as_value(const Term& t, Span at) const;
  bool at_atom_start() const;
  Value resolve_ident(const Token& tok) const;

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature& sig_;
};

bool is_keyword(std::string_view s);

}  // namespace olr::detail
