#include "olr/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "lexer.hpp"

namespace olr {
namespace detail {

bool is_keyword(std::string_view s) {
  static const std::set<std::string_view> kw{"val", "effect", "return", "let", "in", "fst", "snd", "op", "Unit"};
  return kw.contains(s);
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto digit = [&](std::size_t j) { return j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])); };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Span at{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
        ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), at});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && digit(i + 1))) {
      std::size_t j = i + 1;
      while (digit(j)) ++j;
      if (j < src.size() && src[j] == '/' && digit(j + 1)) {
        ++j;
        while (digit(j)) ++j;
      }
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), at});
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Symbol, "->", at});
      advance(2);
      continue;
    }
    if (c == '=' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Symbol, "=>", at});
      advance(2);
      continue;
    }
    static const std::string_view singles = "\\:.(),=*#{}[];";
    if (singles.find(c) != std::string_view::npos) {
      out.push_back({Tok::Symbol, std::string(1, c), at});
      advance(1);
      continue;
    }
    throw SyntaxError(at, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

const Token& TermParser::peek(std::size_t ahead) const {
  return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
}

Token TermParser::next() {
  Token t = peek();
  if (pos_ < toks_.size() - 1) ++pos_;
  return t;
}

bool TermParser::at_symbol(std::string_view s) const { return peek().kind == Tok::Symbol && peek().text == s; }
bool TermParser::at_ident(std::string_view s) const { return peek().kind == Tok::Ident && peek().text == s; }

bool TermParser::accept_symbol(std::string_view s) {
  if (!at_symbol(s)) return false;
  next();
  return true;
}

void TermParser::expect_symbol(std::string_view s) {
  if (!accept_symbol(s)) fail("expected '" + std::string(s) + "'");
}

std::string TermParser::expect_ident() {
  if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail("expected an identifier");
  return next().text;
}

void TermParser::fail(const std::string& msg) const {
  const Token& t = peek();
  std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  throw SyntaxError(t.at, msg + ", found " + found);
}

// ---------------------------------------------------------------- types

Ty TermParser::type() {
  Ty lhs = type_prod();
  if (accept_symbol("->")) return Ty::arrow(lhs, type());
  return lhs;
}

Ty TermParser::type_prod() {
  Ty lhs = type_atom();
  while (accept_symbol("*")) lhs = Ty::prod(lhs, type_atom());
  return lhs;
}

Ty TermParser::type_atom() {
  if (accept_symbol("(")) {
    Ty t = type();
    expect_symbol(")");
    return t;
  }
  if (at_ident("Unit")) {
    next();
    return Ty::unit();
  }
  if (peek().kind == Tok::Ident && !is_keyword(peek().text)) return Ty::base(next().text);
  fail("expected a type");
}

// ---------------------------------------------------------------- terms

bool TermParser::at_atom_start() const {
  const Token& t = peek();
  if (t.kind == Tok::Number) return true;
  if (t.kind == Tok::Ident) return !is_keyword(t.text);
  return t.kind == Tok::Symbol && t.text == "(";
}

Value TermParser::resolve_ident(const Token& tok) const {
  if (std::find(scope.begin(), scope.end(), tok.text) != scope.end()) return Value::var(tok.text, tok.at);
  auto bases = sig_.bases_with_literal(tok.text);
  if (bases.size() == 1) return Value::constant(bases.front(), tok.text, tok.at);
  if (bases.size() > 1) throw SyntaxError(tok.at, "ambiguous literal '" + tok.text + "' (declared by several base types)");
  if (tok.kind == Tok::Number) throw SyntaxError(tok.at, "'" + tok.text + "' is not a literal of any declared base type");
  if (auto it = globals.find(tok.text); it != globals.end()) return it->second;
  return Value::var(tok.text, tok.at);
}

Value TermParser::as_value(const Term& t, Span at) const {
  if (const auto* v = std::get_if<Value>(&t)) return *v;
  throw SyntaxError(at, "computation in value position");
}

Term TermParser::atom() {
  Token tok = peek();
  if (tok.kind == Tok::Ident || tok.kind == Tok::Number) {
    next();
    return resolve_ident(tok);
  }
  expect_symbol("(");
  if (accept_symbol(")")) return Value::unit(tok.at);
  Span first_at = peek().at;
  Term first = term();
  if (accept_symbol(",")) {
    Span second_at = peek().at;
    Term second = term();
    expect_symbol(")");
    return Value::pair(as_value(first, first_at), as_value(second, second_at), tok.at);
  }
  expect_symbol(")");
  return first;
}

Value TermParser::lambda() {
  Span at = peek().at;
  expect_symbol("\\");
  std::string x = expect_ident();
  if (!sig_.bases_with_literal(x).empty()) throw SyntaxError(at, "binder '" + x + "' shadows a literal");
  expect_symbol(":");
  Ty ann = type();
  expect_symbol(".");
  scope.push_back(x);
  Comp body = comp();
  scope.pop_back();
  return Value::lam(x, ann, body, at);
}

Value TermParser::operand() {
  if (at_symbol("\\")) return lambda();
  Span at = peek().at;
  if (!at_atom_start()) fail("expected a value");
  return as_value(atom(), at);
}

Comp TermParser::comp() {
  Span at = peek().at;
  Term t = term();
  if (const auto* c = std::get_if<Comp>(&t)) return *c;
  throw SyntaxError(at, "expected a computation, found the value " + to_string(std::get<Value>(t)) +
                            " (use 'return')");
}

Term TermParser::term() {
  Span at = peek().at;
  if (at_ident("return")) {
    next();
    return Comp::ret(operand(), at);
  }
  if (at_ident("fst") || at_ident("snd")) {
    bool first = next().text == "fst";
    Value v = operand();
    return first ? Comp::fst(v, at) : Comp::snd(v, at);
  }
  if (at_ident("op")) {
    next();
    expect_symbol("#");
    return Comp::effect(expect_ident(), at);
  }
  if (at_ident("let")) {
    next();
    std::string x = expect_ident();
    if (!sig_.bases_with_literal(x).empty()) throw SyntaxError(at, "binder '" + x + "' shadows a literal");
    expect_symbol("=");
    Comp head = comp();
    if (!at_ident("in")) fail("expected 'in'");
    next();
    scope.push_back(x);
    Comp tail = comp();
    scope.pop_back();
    return Comp::let(x, head, tail, at);
  }
  if (at_symbol("\\")) return lambda();
  if (!at_atom_start()) fail("expected a term");

  Term head = atom();
  if (!at_atom_start() && !at_symbol("\\")) return head;
  Value fn = as_value(head, at);
  Value arg = operand();
  if (at_atom_start()) throw SyntaxError(peek().at, "computation in value position (application result applied again)");
  return Comp::app(fn, arg, at);
}

}  // namespace detail

// ---------------------------------------------------------------- programs

Program parse_program(std::string_view source, const Signature& sig) {
  using detail::TermParser;
  TermParser p(detail::tokenize(source), sig);
  Program prog;
  std::set<std::string> names;

  while (!p.at_end()) {
    Span at = p.peek().at;
    if (p.at_ident("effect")) {
      p.next();
      std::string name = p.expect_ident();
      if (!names.insert(name).second) throw SyntaxError(at, "duplicate declaration '" + name + "'");
      p.expect_symbol(":");
      prog.effects.push_back({name, p.type(), at});
      continue;
    }
    if (p.at_ident("val")) {
      p.next();
      std::string name = p.expect_ident();
      if (!names.insert(name).second) throw SyntaxError(at, "duplicate declaration '" + name + "'");
      Context params;
      if (p.accept_symbol("(")) {
        do {
          Span pat = p.peek().at;
          std::string x = p.expect_ident();
          if (params.lookup(x)) throw SyntaxError(pat, "duplicate parameter '" + x + "'");
          p.expect_symbol(":");
          params = params.extended(x, p.type());
        } while (p.accept_symbol(","));
        p.expect_symbol(")");
      }
      p.expect_symbol("=");
      p.scope.clear();
      for (const auto& [x, _] : params.entries()) p.scope.push_back(x);
      Term body = p.term();
      if (!p.at_end() && !p.at_ident("val") && !p.at_ident("effect")) p.fail("unexpected token after declaration");
      if (params.empty() && std::holds_alternative<Value>(body) && free_vars(body).empty())
        p.globals.emplace(name, std::get<Value>(body));
      prog.decls.push_back({name, params, body, at});
      continue;
    }
    p.fail("expected 'val' or 'effect'");
  }
  return prog;
}

Ty parse_type(std::string_view text) {
  Signature none;
  detail::TermParser p(detail::tokenize(text), none);
  Ty t = p.type();
  if (!p.at_end()) p.fail("trailing input after type");
  return t;
}

Value parse_value(std::string_view text, const Signature& sig) {
  detail::TermParser p(detail::tokenize(text), sig);
  Value v = p.operand();
  if (!p.at_end()) p.fail("trailing input after value");
  return v;
}

}  // namespace olr
