#pragma once

// Literal syntax for monadic containers, parameterized by the payload parser
// and printer. Shared by value-level and distance-level literals.

#include <functional>
#include <string>

#include "lexer.hpp"
#include "olr/monad.hpp"

namespace olr::detail {

template <class P>
Monadic<P> parse_monadic(TermParser& p, MonadTag tag, const std::function<P(TermParser&)>& payload) {
  switch (tag) {
    case MonadTag::Identity:
      return Monadic<P>::unit(tag, payload(p));
    case MonadTag::Partial:
      if (p.at_ident("timeout")) {
        p.next();
        return Monadic<P>::timeout();
      }
      if (!p.at_ident("some")) p.fail("expected 'some(...)' or 'timeout'");
      p.next();
      {
        p.expect_symbol("(");
        P v = payload(p);
        p.expect_symbol(")");
        return Monadic<P>::unit(tag, std::move(v));
      }
    case MonadTag::Cost: {
      if (!p.at_ident("cost")) p.fail("expected 'cost(c, v)'");
      p.next();
      p.expect_symbol("(");
      Token c = p.next();
      auto q = c.kind == Tok::Number ? parse_rational(c.text) : std::nullopt;
      if (!q) throw SyntaxError(c.at, "expected a rational cost");
      p.expect_symbol(",");
      P v = payload(p);
      p.expect_symbol(")");
      try {
        return Monadic<P>::with_cost(*q, std::move(v));
      } catch (const Error& e) {
        throw SyntaxError(c.at, e.what());
      }
    }
    case MonadTag::Powerset:
    case MonadTag::Dist: {
      Span at = p.peek().at;
      p.expect_symbol("{");
      std::vector<std::pair<P, Rational>> items;
      if (!p.at_symbol("}")) {
        do {
          P v = payload(p);
          Rational w(1);
          if (tag == MonadTag::Dist) {
            p.expect_symbol(":");
            Token t = p.next();
            auto q = t.kind == Tok::Number ? parse_rational(t.text) : std::nullopt;
            if (!q) throw SyntaxError(t.at, "expected a rational weight");
            w = *q;
          }
          items.emplace_back(std::move(v), w);
        } while (p.accept_symbol(","));
      }
      p.expect_symbol("}");
      if (tag == MonadTag::Powerset) {
        std::vector<P> elems;
        for (auto& [v, _] : items) elems.push_back(std::move(v));
        return Monadic<P>::set(std::move(elems));
      }
      try {
        return Monadic<P>::dist(std::move(items));
      } catch (const Error& e) {
        throw SyntaxError(at, e.what());
      }
    }
  }
  p.fail("unknown monad");
}

template <class P>
std::string print_monadic(const Monadic<P>& m, const std::function<std::string(const P&)>& payload) {
  switch (m.tag()) {
    case MonadTag::Identity:
      return payload(m.only());
    case MonadTag::Partial:
      return m.is_timeout() ? "timeout" : "some(" + payload(m.only()) + ")";
    case MonadTag::Cost:
      return "cost(" + to_string(m.cost()) + ", " + payload(m.only()) + ")";
    case MonadTag::Powerset:
    case MonadTag::Dist: {
      std::string s = "{";
      bool first = true;
      for (const auto& [_, e] : m.entries()) {
        if (!first) s += ", ";
        first = false;
        s += payload(e.payload);
        if (m.tag() == MonadTag::Dist) s += ": " + to_string(e.weight);
      }
      return s + "}";
    }
  }
  return {};
}

}  // namespace olr::detail
