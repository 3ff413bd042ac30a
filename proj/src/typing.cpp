#include "olr/typing.hpp"

#include <algorithm>

namespace olr {

void Signature::add_base(const std::string& name, std::vector<std::string> literals) {
  bases_[name] = std::move(literals);
}

void Signature::add_effect(EffectDecl decl) {
  for (auto& e : effects_) {
    if (e.name == decl.name) {
      e = std::move(decl);
      return;
    }
  }
  effects_.push_back(std::move(decl));
}

const std::vector<std::string>& Signature::literals(const std::string& base) const {
  auto it = bases_.find(base);
  if (it == bases_.end()) throw TypeError({}, "unknown base type '" + base + "'");
  return it->second;
}

std::vector<std::string> Signature::bases_with_literal(const std::string& lit) const {
  std::vector<std::string> out;
  for (const auto& [name, lits] : bases_)
    if (std::find(lits.begin(), lits.end(), lit) != lits.end()) out.push_back(name);
  return out;
}

const EffectDecl* Signature::effect(const std::string& name) const {
  for (const auto& e : effects_)
    if (e.name == name) return &e;
  return nullptr;
}

void Signature::check_type(const Ty& ty, Span at) const {
  switch (ty.kind()) {
    case Ty::Kind::Unit:
      return;
    case Ty::Kind::Base:
      if (!has_base(ty.name())) throw TypeError(at, "unknown base type '" + ty.name() + "'");
      return;
    case Ty::Kind::Prod:
    case Ty::Kind::Arrow:
      check_type(ty.left(), at);
      check_type(ty.right(), at);
      return;
  }
}

Context::Context(std::initializer_list<std::pair<std::string, Ty>> entries) {
  for (const auto& [n, t] : entries) *this = extended(n, t);
}

Context Context::extended(const std::string& name, const Ty& ty) const {
  Context c;
  c.entries_.reserve(entries_.size() + 1);
  for (const auto& e : entries_)
    if (e.first != name) c.entries_.push_back(e);
  c.entries_.emplace_back(name, ty);
  return c;
}

const Ty* Context::lookup(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.first == name) return &e.second;
  return nullptr;
}

std::string Context::str() const {
  std::string s;
  for (const auto& [n, t] : entries_) {
    if (!s.empty()) s += ", ";
    s += n + ":" + t.str();
  }
  return s;
}

Ty typecheck_value(const Signature& sig, const Context& ctx, const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Var: {
      const Ty* t = ctx.lookup(v.name());
      if (!t) throw TypeError(v.span(), "unbound variable '" + v.name() + "'");
      return *t;
    }
    case Value::Kind::Const: {
      if (!sig.has_base(v.base())) throw TypeError(v.span(), "unknown base type '" + v.base() + "'");
      const auto& lits = sig.literals(v.base());
      if (std::find(lits.begin(), lits.end(), v.name()) == lits.end())
        throw TypeError(v.span(), "'" + v.name() + "' is not a literal of " + v.base());
      return Ty::base(v.base());
    }
    case Value::Kind::Unit:
      return Ty::unit();
    case Value::Kind::Lam: {
      sig.check_type(v.annotation(), v.span());
      Ty body = typecheck_comp(sig, ctx.extended(v.name(), v.annotation()), v.body());
      return Ty::arrow(v.annotation(), body);
    }
    case Value::Kind::Pair:
      return Ty::prod(typecheck_value(sig, ctx, v.first()), typecheck_value(sig, ctx, v.second()));
  }
  throw TypeError(v.span(), "malformed value");
}

Ty typecheck_comp(const Signature& sig, const Context& ctx, const Comp& t) {
  switch (t.kind()) {
    case Comp::Kind::Return:
      return typecheck_value(sig, ctx, t.value());
    case Comp::Kind::App: {
      Ty fn = typecheck_value(sig, ctx, t.value());
      Ty arg = typecheck_value(sig, ctx, t.arg());
      if (!fn.is(Ty::Kind::Arrow))
        throw TypeError(t.span(), "applying a value of non-function type " + fn.str());
      if (!(fn.left() == arg))
        throw TypeError(t.span(), "argument has type " + arg.str() + " but the function expects " + fn.left().str());
      return fn.right();
    }
    case Comp::Kind::Fst:
    case Comp::Kind::Snd: {
      Ty p = typecheck_value(sig, ctx, t.value());
      if (!p.is(Ty::Kind::Prod)) throw TypeError(t.span(), "projection of non-product type " + p.str());
      return t.is(Comp::Kind::Fst) ? p.left() : p.right();
    }
    case Comp::Kind::Let: {
      Ty head = typecheck_comp(sig, ctx, t.head());
      return typecheck_comp(sig, ctx.extended(t.name(), head), t.tail());
    }
    case Comp::Kind::Effect: {
      const EffectDecl* e = sig.effect(t.name());
      if (!e) throw TypeError(t.span(), "undeclared effect '" + t.name() + "'");
      return e->result;
    }
  }
  throw TypeError(t.span(), "malformed computation");
}

Ty typecheck(const Signature& sig, const Context& ctx, const Term& t) {
  if (const auto* v = std::get_if<Value>(&t)) return typecheck_value(sig, ctx, *v);
  return typecheck_comp(sig, ctx, std::get<Comp>(t));
}

}  // namespace olr
