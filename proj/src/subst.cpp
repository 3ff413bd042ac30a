#include "olr/subst.hpp"

namespace olr {

namespace {

Bindings without(const Bindings& b, const std::string& name) {
  if (!b.contains(name)) return b;
  Bindings out = b;
  out.erase(name);
  return out;
}

Value subst_v(const Value& v, const Bindings& b);

Comp subst_c(const Comp& t, const Bindings& b) {
  if (b.empty()) return t;
  switch (t.kind()) {
    case Comp::Kind::Return:
      return Comp::ret(subst_v(t.value(), b), t.span());
    case Comp::Kind::App:
      return Comp::app(subst_v(t.value(), b), subst_v(t.arg(), b), t.span());
    case Comp::Kind::Fst:
      return Comp::fst(subst_v(t.value(), b), t.span());
    case Comp::Kind::Snd:
      return Comp::snd(subst_v(t.value(), b), t.span());
    case Comp::Kind::Let:
      return Comp::let(t.name(), subst_c(t.head(), b), subst_c(t.tail(), without(b, t.name())), t.span());
    case Comp::Kind::Effect:
      return t;
  }
  return t;
}

Value subst_v(const Value& v, const Bindings& b) {
  if (b.empty()) return v;
  switch (v.kind()) {
    case Value::Kind::Var: {
      auto it = b.find(v.name());
      return it == b.end() ? v : it->second;
    }
    case Value::Kind::Const:
    case Value::Kind::Unit:
      return v;
    case Value::Kind::Lam:
      return Value::lam(v.name(), v.annotation(), subst_c(v.body(), without(b, v.name())), v.span());
    case Value::Kind::Pair:
      return Value::pair(subst_v(v.first(), b), subst_v(v.second(), b), v.span());
  }
  return v;
}

void require_closed(const Bindings& b) {
  for (const auto& [name, v] : b)
    if (!free_vars(v).empty())
      throw SubstError("value bound to '" + name + "' is not closed: " + to_string(v));
}

}  // namespace

Value substitute(const Value& v, const Bindings& b) {
  require_closed(b);
  return subst_v(v, b);
}

Comp substitute(const Comp& t, const Bindings& b) {
  require_closed(b);
  return subst_c(t, b);
}

Term substitute(const Term& t, const Bindings& b) {
  return std::visit([&](const auto& x) -> Term { return substitute(x, b); }, t);
}

Term substitute_checked(const Signature& sig, const Context& ctx, const Term& t, const Bindings& b) {
  for (const auto& name : free_vars(t))
    if (!b.contains(name)) throw SubstError("missing binding for free variable '" + name + "'");
  for (const auto& [name, v] : b) {
    const Ty* want = ctx.lookup(name);
    if (!want) throw SubstError("binding for '" + name + "' which is not in the context");
    Ty got = typecheck_value(sig, Context{}, v);
    if (!(got == *want))
      throw SubstError("type mismatch for '" + name + "': expected " + want->str() + ", got " + got.str());
  }
  return substitute(t, b);
}

Comp instantiate(const Comp& t, const std::string& x, const Value& closed) {
  return subst_c(t, Bindings{{x, closed}});
}

Comp apply_lambda(const Value& lam, const Value& arg) {
  if (!lam.is(Value::Kind::Lam)) throw EvalError("application of a non-abstraction: " + to_string(lam));
  return subst_c(lam.body(), Bindings{{lam.name(), arg}});
}

}  // namespace olr
