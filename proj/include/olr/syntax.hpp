#pragma once

// Abstract syntax of the fine-grain call-by-value calculus.
//
// Values and computations are separate classes; a computation can never sit
// where a value is expected. All nodes are immutable and shared.

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "olr/error.hpp"

namespace olr {

class Ty {
 public:
  enum class Kind { Unit, Base, Prod, Arrow };

  static Ty unit();
  static Ty base(std::string name);
  static Ty prod(Ty first, Ty second);
  static Ty arrow(Ty domain, Ty codomain);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  const std::string& name() const;  // Base only
  const Ty& left() const;           // Prod first / Arrow domain
  const Ty& right() const;          // Prod second / Arrow codomain

  std::string str() const;

  friend bool operator==(const Ty& a, const Ty& b) { return a.str() == b.str(); }
  friend bool operator<(const Ty& a, const Ty& b) { return a.str() < b.str(); }

 private:
  struct Node;
  explicit Ty(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class Comp;

class Value {
 public:
  enum class Kind { Var, Const, Unit, Lam, Pair };

  static Value var(std::string name, Span at = {});
  static Value constant(std::string base, std::string literal, Span at = {});
  static Value unit(Span at = {});
  static Value lam(std::string bound, Ty annotation, Comp body, Span at = {});
  static Value pair(Value first, Value second, Span at = {});

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  Span span() const;

  const std::string& name() const;     // Var name, Lam binder, Const literal
  const std::string& base() const;     // Const
  const Ty& annotation() const;        // Lam
  const Comp& body() const;            // Lam
  const Value& first() const;          // Pair
  const Value& second() const;         // Pair

 private:
  struct Node;
  explicit Value(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class Comp {
 public:
  enum class Kind { Return, App, Fst, Snd, Let, Effect };

  static Comp ret(Value v, Span at = {});
  static Comp app(Value fn, Value arg, Span at = {});
  static Comp fst(Value v, Span at = {});
  static Comp snd(Value v, Span at = {});
  static Comp let(std::string bound, Comp head, Comp tail, Span at = {});
  static Comp effect(std::string name, Span at = {});

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  Span span() const;

  const Value& value() const;        // Return, Fst, Snd operand; App function
  const Value& arg() const;          // App argument
  const std::string& name() const;   // Let binder, Effect name
  const Comp& head() const;          // Let bound computation
  const Comp& tail() const;          // Let body

 private:
  struct Node;
  explicit Comp(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// A declaration body is either a value or a computation.
using Term = std::variant<Value, Comp>;

// Printing in the surface syntax (re-parseable).
std::string to_string(const Value& v);
std::string to_string(const Comp& t);
std::string to_string(const Term& t);

/// Alpha-invariant structural key: bound variables are replaced by de Bruijn
/// indices, free variables keep their names, spans are ignored.
std::string key(const Value& v);
std::string key(const Comp& t);
std::string key(const Term& t);

/// Payload identity for monadic containers of values.
inline std::string payload_key(const Value& v) { return key(v); }

inline bool alpha_eq(const Value& a, const Value& b) { return key(a) == key(b); }
inline bool alpha_eq(const Comp& a, const Comp& b) { return key(a) == key(b); }

std::set<std::string> free_vars(const Value& v);
std::set<std::string> free_vars(const Comp& t);
std::set<std::string> free_vars(const Term& t);

/// AST depth: leaves count 1, every constructor adds 1 over its deepest child.
int depth(const Value& v);
int depth(const Comp& t);

/// Renames every bound variable to `x<k>` where k is its binder nesting level,
/// skipping names that occur free. Alpha-equivalent inputs give identical
/// outputs.
Value canonical(const Value& v);
Comp canonical(const Comp& t);

}  // namespace olr
