#include "olr/syntax.hpp"

#include <algorithm>
#include <map>

namespace olr {

// ---------------------------------------------------------------- types

struct Ty::Node {
  Kind kind;
  std::string name;
  std::vector<Ty> kids;
  std::string text;
};

namespace {

std::string render_type(Ty::Kind k, const std::string& name, const Ty* l, const Ty* r) {
  switch (k) {
    case Ty::Kind::Unit:
      return "Unit";
    case Ty::Kind::Base:
      return name;
    case Ty::Kind::Prod: {
      // `*` is left-associative and binds tighter than `->`.
      std::string a = l->str(), b = r->str();
      if (l->is(Ty::Kind::Arrow)) a = "(" + a + ")";
      if (r->is(Ty::Kind::Arrow) || r->is(Ty::Kind::Prod)) b = "(" + b + ")";
      return a + " * " + b;
    }
    case Ty::Kind::Arrow: {
      std::string a = l->str();
      if (l->is(Ty::Kind::Arrow)) a = "(" + a + ")";
      return a + " -> " + r->str();
    }
  }
  return {};
}

}  // namespace

Ty Ty::unit() {
  static const Ty u(std::make_shared<const Node>(Node{Kind::Unit, {}, {}, "Unit"}));
  return u;
}

Ty Ty::base(std::string name) {
  auto text = name;
  return Ty(std::make_shared<const Node>(Node{Kind::Base, std::move(name), {}, std::move(text)}));
}

Ty Ty::prod(Ty first, Ty second) {
  auto text = render_type(Kind::Prod, {}, &first, &second);
  return Ty(std::make_shared<const Node>(Node{Kind::Prod, {}, {std::move(first), std::move(second)}, std::move(text)}));
}

Ty Ty::arrow(Ty domain, Ty codomain) {
  auto text = render_type(Kind::Arrow, {}, &domain, &codomain);
  return Ty(std::make_shared<const Node>(Node{Kind::Arrow, {}, {std::move(domain), std::move(codomain)}, std::move(text)}));
}

Ty::Kind Ty::kind() const { return node_->kind; }
const std::string& Ty::name() const { return node_->name; }
std::string Ty::str() const { return node_->text; }

const Ty& Ty::left() const { return node_->kids.at(0); }
const Ty& Ty::right() const { return node_->kids.at(1); }

// ---------------------------------------------------------------- values

struct Value::Node {
  Kind kind;
  Span at;
  std::string name;
  std::string base;
  std::vector<Ty> ann;       // Lam annotation (0 or 1)
  std::vector<Comp> body;    // Lam body (0 or 1)
  std::vector<Value> parts;  // Pair components
};

Value Value::var(std::string name, Span at) {
  return Value(std::make_shared<const Node>(Node{Kind::Var, at, std::move(name), {}, {}, {}, {}}));
}
Value Value::constant(std::string base, std::string literal, Span at) {
  return Value(std::make_shared<const Node>(Node{Kind::Const, at, std::move(literal), std::move(base), {}, {}, {}}));
}
Value Value::unit(Span at) { return Value(std::make_shared<const Node>(Node{Kind::Unit, at, {}, {}, {}, {}, {}})); }
Value Value::lam(std::string bound, Ty annotation, Comp body, Span at) {
  return Value(std::make_shared<const Node>(
      Node{Kind::Lam, at, std::move(bound), {}, {std::move(annotation)}, {std::move(body)}, {}}));
}
Value Value::pair(Value first, Value second, Span at) {
  return Value(
      std::make_shared<const Node>(Node{Kind::Pair, at, {}, {}, {}, {}, {std::move(first), std::move(second)}}));
}

Value::Kind Value::kind() const { return node_->kind; }
Span Value::span() const { return node_->at; }
const std::string& Value::name() const { return node_->name; }
const std::string& Value::base() const { return node_->base; }
const Ty& Value::annotation() const { return node_->ann.at(0); }
const Comp& Value::body() const { return node_->body.at(0); }
const Value& Value::first() const { return node_->parts.at(0); }
const Value& Value::second() const { return node_->parts.at(1); }

// ---------------------------------------------------------------- computations

struct Comp::Node {
  Kind kind;
  Span at;
  std::string name;
  std::vector<Value> vals;
  std::vector<Comp> comps;
};

Comp Comp::ret(Value v, Span at) {
  return Comp(std::make_shared<const Node>(Node{Kind::Return, at, {}, {std::move(v)}, {}}));
}
Comp Comp::app(Value fn, Value arg, Span at) {
  return Comp(std::make_shared<const Node>(Node{Kind::App, at, {}, {std::move(fn), std::move(arg)}, {}}));
}
Comp Comp::fst(Value v, Span at) {
  return Comp(std::make_shared<const Node>(Node{Kind::Fst, at, {}, {std::move(v)}, {}}));
}
Comp Comp::snd(Value v, Span at) {
  return Comp(std::make_shared<const Node>(Node{Kind::Snd, at, {}, {std::move(v)}, {}}));
}
Comp Comp::let(std::string bound, Comp head, Comp tail, Span at) {
  return Comp(std::make_shared<const Node>(Node{Kind::Let, at, std::move(bound), {}, {std::move(head), std::move(tail)}}));
}
Comp Comp::effect(std::string name, Span at) {
  return Comp(std::make_shared<const Node>(Node{Kind::Effect, at, std::move(name), {}, {}}));
}

Comp::Kind Comp::kind() const { return node_->kind; }
Span Comp::span() const { return node_->at; }
const Value& Comp::value() const { return node_->vals.at(0); }
const Value& Comp::arg() const { return node_->vals.at(1); }
const std::string& Comp::name() const { return node_->name; }
const Comp& Comp::head() const { return node_->comps.at(0); }
const Comp& Comp::tail() const { return node_->comps.at(1); }

// ---------------------------------------------------------------- printing

namespace {

std::string print_atom(const Value& v);

std::string print_value(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Var:
    case Value::Kind::Const:
      return v.name();
    case Value::Kind::Unit:
      return "()";
    case Value::Kind::Lam:
      return "\\" + v.name() + ":" + v.annotation().str() + ". " + to_string(v.body());
    case Value::Kind::Pair:
      return "(" + print_atom(v.first()) + ", " + print_atom(v.second()) + ")";
  }
  return {};
}

std::string print_atom(const Value& v) {
  if (v.is(Value::Kind::Lam)) return "(" + print_value(v) + ")";
  return print_value(v);
}

}  // namespace

std::string to_string(const Value& v) { return print_value(v); }

std::string to_string(const Comp& t) {
  switch (t.kind()) {
    case Comp::Kind::Return:
      return "return " + print_atom(t.value());
    case Comp::Kind::App:
      return print_atom(t.value()) + " " + print_atom(t.arg());
    case Comp::Kind::Fst:
      return "fst " + print_atom(t.value());
    case Comp::Kind::Snd:
      return "snd " + print_atom(t.value());
    case Comp::Kind::Let: {
      std::string head = to_string(t.head());
      if (t.head().is(Comp::Kind::Let)) head = "(" + head + ")";
      return "let " + t.name() + " = " + head + " in " + to_string(t.tail());
    }
    case Comp::Kind::Effect:
      return "op#" + t.name();
  }
  return {};
}

std::string to_string(const Term& t) {
  return std::visit([](const auto& x) { return to_string(x); }, t);
}

// ---------------------------------------------------------------- keys

namespace {

using Binders = std::vector<std::string>;

std::string key_c(const Comp& t, Binders& b);

std::string key_v(const Value& v, Binders& b) {
  switch (v.kind()) {
    case Value::Kind::Var: {
      for (std::size_t i = b.size(); i-- > 0;)
        if (b[i] == v.name()) return "#" + std::to_string(b.size() - 1 - i);
      return "$" + v.name();
    }
    case Value::Kind::Const:
      return "c(" + v.base() + ":" + v.name() + ")";
    case Value::Kind::Unit:
      return "()";
    case Value::Kind::Lam: {
      b.push_back(v.name());
      std::string k = "\\" + v.annotation().str() + "." + key_c(v.body(), b);
      b.pop_back();
      return k;
    }
    case Value::Kind::Pair:
      return "<" + key_v(v.first(), b) + "," + key_v(v.second(), b) + ">";
  }
  return {};
}

std::string key_c(const Comp& t, Binders& b) {
  switch (t.kind()) {
    case Comp::Kind::Return:
      return "ret(" + key_v(t.value(), b) + ")";
    case Comp::Kind::App:
      return "app(" + key_v(t.value(), b) + "," + key_v(t.arg(), b) + ")";
    case Comp::Kind::Fst:
      return "fst(" + key_v(t.value(), b) + ")";
    case Comp::Kind::Snd:
      return "snd(" + key_v(t.value(), b) + ")";
    case Comp::Kind::Let: {
      std::string h = key_c(t.head(), b);
      b.push_back(t.name());
      std::string k = "let(" + h + ";" + key_c(t.tail(), b) + ")";
      b.pop_back();
      return k;
    }
    case Comp::Kind::Effect:
      return "op(" + t.name() + ")";
  }
  return {};
}

}  // namespace

std::string key(const Value& v) {
  Binders b;
  return key_v(v, b);
}
std::string key(const Comp& t) {
  Binders b;
  return key_c(t, b);
}
std::string key(const Term& t) {
  return std::visit([](const auto& x) { return key(x); }, t);
}

// ---------------------------------------------------------------- free variables

namespace {

void fv_c(const Comp& t, std::multiset<std::string>& bound, std::set<std::string>& out);

void fv_v(const Value& v, std::multiset<std::string>& bound, std::set<std::string>& out) {
  switch (v.kind()) {
    case Value::Kind::Var:
      if (!bound.contains(v.name())) out.insert(v.name());
      return;
    case Value::Kind::Const:
    case Value::Kind::Unit:
      return;
    case Value::Kind::Lam: {
      auto it = bound.insert(v.name());
      fv_c(v.body(), bound, out);
      bound.erase(it);
      return;
    }
    case Value::Kind::Pair:
      fv_v(v.first(), bound, out);
      fv_v(v.second(), bound, out);
      return;
  }
}

void fv_c(const Comp& t, std::multiset<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case Comp::Kind::Return:
    case Comp::Kind::Fst:
    case Comp::Kind::Snd:
      fv_v(t.value(), bound, out);
      return;
    case Comp::Kind::App:
      fv_v(t.value(), bound, out);
      fv_v(t.arg(), bound, out);
      return;
    case Comp::Kind::Let: {
      fv_c(t.head(), bound, out);
      auto it = bound.insert(t.name());
      fv_c(t.tail(), bound, out);
      bound.erase(it);
      return;
    }
    case Comp::Kind::Effect:
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const Value& v) {
  std::multiset<std::string> bound;
  std::set<std::string> out;
  fv_v(v, bound, out);
  return out;
}
std::set<std::string> free_vars(const Comp& t) {
  std::multiset<std::string> bound;
  std::set<std::string> out;
  fv_c(t, bound, out);
  return out;
}
std::set<std::string> free_vars(const Term& t) {
  return std::visit([](const auto& x) { return free_vars(x); }, t);
}

// ---------------------------------------------------------------- depth

int depth(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Var:
    case Value::Kind::Const:
    case Value::Kind::Unit:
      return 1;
    case Value::Kind::Lam:
      return 1 + depth(v.body());
    case Value::Kind::Pair:
      return 1 + std::max(depth(v.first()), depth(v.second()));
  }
  return 0;
}

int depth(const Comp& t) {
  switch (t.kind()) {
    case Comp::Kind::Return:
    case Comp::Kind::Fst:
    case Comp::Kind::Snd:
      return 1 + depth(t.value());
    case Comp::Kind::App:
      return 1 + std::max(depth(t.value()), depth(t.arg()));
    case Comp::Kind::Let:
      return 1 + std::max(depth(t.head()), depth(t.tail()));
    case Comp::Kind::Effect:
      return 1;
  }
  return 0;
}

// ---------------------------------------------------------------- canonical naming

namespace {

struct Renamer {
  std::set<std::string> avoid;
  std::vector<std::pair<std::string, std::string>> scope;  // old -> new

  std::string fresh(std::size_t level) const {
    std::string n = "x" + std::to_string(level);
    while (avoid.contains(n)) n += "'";
    return n;
  }

  std::string lookup(const std::string& old) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == old) return it->second;
    return old;
  }

  Value value(const Value& v) {
    switch (v.kind()) {
      case Value::Kind::Var:
        return Value::var(lookup(v.name()), v.span());
      case Value::Kind::Const:
      case Value::Kind::Unit:
        return v;
      case Value::Kind::Lam: {
        std::string n = fresh(scope.size());
        scope.emplace_back(v.name(), n);
        Comp body = comp(v.body());
        scope.pop_back();
        return Value::lam(n, v.annotation(), body, v.span());
      }
      case Value::Kind::Pair:
        return Value::pair(value(v.first()), value(v.second()), v.span());
    }
    return v;
  }

  Comp comp(const Comp& t) {
    switch (t.kind()) {
      case Comp::Kind::Return:
        return Comp::ret(value(t.value()), t.span());
      case Comp::Kind::App:
        return Comp::app(value(t.value()), value(t.arg()), t.span());
      case Comp::Kind::Fst:
        return Comp::fst(value(t.value()), t.span());
      case Comp::Kind::Snd:
        return Comp::snd(value(t.value()), t.span());
      case Comp::Kind::Let: {
        Comp head = comp(t.head());
        std::string n = fresh(scope.size());
        scope.emplace_back(t.name(), n);
        Comp tail = comp(t.tail());
        scope.pop_back();
        return Comp::let(n, head, tail, t.span());
      }
      case Comp::Kind::Effect:
        return t;
    }
    return t;
  }
};

}  // namespace

Value canonical(const Value& v) {
  Renamer r{free_vars(v), {}};
  return r.value(v);
}

Comp canonical(const Comp& t) {
  Renamer r{free_vars(t), {}};
  return r.comp(t);
}

}  // namespace olr
