#include "olr/coherence.hpp"

namespace olr {

std::string_view to_string(Law law) {
  switch (law) {
    case Law::Return:
      return "return";
    case Law::Effect:
      return "effect";
    case Law::Application:
      return "application";
    case Law::Sequencing:
      return "sequencing";
    case Law::Projection:
      return "projection";
    case Law::LambdaTriangle:
      return "lambda-triangle";
    case Law::PairTriangle:
      return "pair-triangle";
    case Law::UnitTriangle:
      return "unit-triangle";
    case Law::ConstTriangle:
      return "const-triangle";
  }
  return "?";
}

std::vector<Law> applicable_laws(const Term& t) {
  if (const auto* v = std::get_if<Value>(&t)) {
    switch (v->kind()) {
      case Value::Kind::Lam:
        return {Law::LambdaTriangle};
      case Value::Kind::Pair:
        return {Law::PairTriangle};
      case Value::Kind::Unit:
        return {Law::UnitTriangle};
      case Value::Kind::Const:
        return {Law::ConstTriangle};
      case Value::Kind::Var:
        return {};
    }
  }
  switch (std::get<Comp>(t).kind()) {
    case Comp::Kind::Return:
      return {Law::Return};
    case Comp::Kind::Effect:
      return {Law::Effect};
    case Comp::Kind::App:
      return {Law::Application};
    case Comp::Kind::Let:
      return {Law::Sequencing};
    case Comp::Kind::Fst:
    case Comp::Kind::Snd:
      return {Law::Projection};
  }
  return {};
}

namespace {

const Comp& need_comp(const Term& t, Comp::Kind k, Law law) {
  const auto* c = std::get_if<Comp>(&t);
  if (!c || (c->kind() != k && !(k == Comp::Kind::Fst && c->is(Comp::Kind::Snd))))
    throw Error("witness " + to_string(t) + " does not fit the " + std::string(to_string(law)) + " law");
  return *c;
}

const Value& need_value(const Term& t, Value::Kind k, Law law) {
  const auto* v = std::get_if<Value>(&t);
  if (!v || v->kind() != k)
    throw Error("witness " + to_string(t) + " does not fit the " + std::string(to_string(law)) + " law");
  return *v;
}

// Environment packed as a right-nested tuple, used as the first component of
// the strength st : Env x T(A) -> T(Env x A).
Value pack_env(const Bindings& env) {
  Value acc = Value::unit();
  for (auto it = env.rbegin(); it != env.rend(); ++it) acc = Value::pair(it->second, acc);
  return acc;
}

Bindings unpack_env(const Bindings& shape, Value packed) {
  Bindings out;
  for (const auto& [name, _] : shape) {
    out.emplace(name, packed.first());
    packed = packed.second();
  }
  return out;
}

CoherenceResult compare(Law law, const Term& t, const MVal& lhs, const MVal& rhs) {
  return {law, lhs == rhs, to_string(t), to_literal(lhs), to_literal(rhs)};
}

CoherenceResult compare_terms(Law law, const Term& t, const Term& lhs, const Term& rhs) {
  return {law, key(lhs) == key(rhs), to_string(t), to_string(lhs), to_string(rhs)};
}

}  // namespace

CoherenceResult check_coherence(const Evaluator& ev, Law law, const Term& t, const Bindings& env,
                                const std::optional<Value>& arg) {
  const MonadTag tag = ev.monad();
  switch (law) {
    case Law::Return: {
      const Comp& c = need_comp(t, Comp::Kind::Return, law);
      return compare(law, t, ev.eval(substitute(c, env)), MVal::unit(tag, substitute(c.value(), env)));
    }
    case Law::Effect: {
      const Comp& c = need_comp(t, Comp::Kind::Effect, law);
      return compare(law, t, ev.eval(c),
                     interpret_effect(tag, ev.config().interp, ev.signature(), c.name()));
    }
    case Law::Application: {
      const Comp& c = need_comp(t, Comp::Kind::App, law);
      Comp via_app = apply_lambda(substitute(c.value(), env), substitute(c.arg(), env));
      return compare(law, t, ev.eval(substitute(c, env)), ev.eval(via_app));
    }
    case Law::Sequencing: {
      const Comp& c = need_comp(t, Comp::Kind::Let, law);
      // <id, S t> then id x ev, then strength, then bind(ev . S s).
      MVal head = ev.eval(substitute(c.head(), env));
      Value packed = pack_env(env);
      auto strong = head.map([&](const Value& a) { return std::pair<Value, Value>(packed, a); });
      MVal rhs = strong.bind([&](const std::pair<Value, Value>& ea) {
        Bindings inner = unpack_env(env, ea.first);
        inner.insert_or_assign(c.name(), ea.second);
        return ev.eval(substitute(c.tail(), inner));
      });
      return compare(law, t, ev.eval(substitute(c, env)), rhs);
    }
    case Law::Projection: {
      const Comp& c = need_comp(t, Comp::Kind::Fst, law);
      Value v = substitute(c.value(), env);
      return compare(law, t, ev.eval(substitute(c, env)), MVal::unit(tag, project(v, c.is(Comp::Kind::Fst))));
    }
    case Law::LambdaTriangle: {
      const Value& lam = need_value(t, Value::Kind::Lam, law);
      if (!arg) throw Error("the lambda triangle needs an argument value");
      Bindings extended = env;
      extended.insert_or_assign(lam.name(), *arg);
      Term direct = substitute(lam.body(), extended);
      Term via_app = apply_lambda(substitute(lam, env), *arg);
      CoherenceResult r = compare_terms(law, t, direct, via_app);
      r.witness += " @ " + to_string(*arg);
      return r;
    }
    case Law::PairTriangle: {
      const Value& p = need_value(t, Value::Kind::Pair, law);
      Value closed = substitute(p, env);
      bool ok = alpha_eq(substitute(p.first(), env), project(closed, true)) &&
                alpha_eq(substitute(p.second(), env), project(closed, false));
      return {law, ok, to_string(t), to_string(closed.first()) + ", " + to_string(closed.second()),
              to_string(project(closed, true)) + ", " + to_string(project(closed, false))};
    }
    case Law::UnitTriangle: {
      const Value& u = need_value(t, Value::Kind::Unit, law);
      return compare_terms(law, t, substitute(u, env), Value::unit());
    }
    case Law::ConstTriangle: {
      const Value& c = need_value(t, Value::Kind::Const, law);
      return compare_terms(law, t, substitute(c, env), Value::constant(c.base(), c.name()));
    }
  }
  throw Error("unknown coherence law");
}

std::vector<CoherenceResult> check_all_laws(const Evaluator& ev, const Enumerator& en, const Term& t,
                                            const Bindings& env, int depth) {
  std::vector<CoherenceResult> out;
  for (Law law : applicable_laws(t)) {
    if (law == Law::LambdaTriangle) {
      const Value& lam = std::get<Value>(t);
      for (const auto& a : en.values(lam.annotation(), depth)) out.push_back(check_coherence(ev, law, t, env, a));
    } else {
      out.push_back(check_coherence(ev, law, t, env));
    }
  }
  return out;
}

}  // namespace olr
