#include "olr/eval.hpp"

namespace olr {

Value project(const Value& pair, bool first) {
  if (!pair.is(Value::Kind::Pair)) throw EvalError("projection of a non-pair value: " + to_string(pair));
  return first ? pair.first() : pair.second();
}

Evaluator::Evaluator(const Signature& sig, EvalConfig cfg) : sig_(sig), cfg_(std::move(cfg)) {
  if (cfg_.fuel < 1) throw EvalError("fuel must be at least 1");
}

MVal Evaluator::eval(const Comp& t) const {
  std::string k = key(t);
  {
    std::lock_guard lock(mu_);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
  }
  MVal r = eval(t, cfg_.fuel);
  std::lock_guard lock(mu_);
  return memo_.emplace(std::move(k), std::move(r)).first->second;
}

MVal Evaluator::eval(const Comp& t, int fuel) const {
  if (auto fv = free_vars(t); !fv.empty()) throw EvalError("cannot evaluate open computation (free " + *fv.begin() + ")");
  return run(t, fuel);
}

MVal Evaluator::run(const Comp& t, int fuel) const {
  const MonadTag tag = cfg_.monad;
  switch (t.kind()) {
    case Comp::Kind::Return:
      return MVal::unit(tag, t.value());
    case Comp::Kind::Fst:
    case Comp::Kind::Snd:
      return MVal::unit(tag, project(t.value(), t.is(Comp::Kind::Fst)));
    case Comp::Kind::Effect:
      return interpret_effect(tag, cfg_.interp, sig_, t.name());
    case Comp::Kind::App:
    case Comp::Kind::Let:
      break;
  }
  if (fuel <= 0) {
    if (tag == MonadTag::Partial) return MVal::timeout();
    throw FuelExhausted();
  }
  if (t.is(Comp::Kind::App)) return run(apply_lambda(t.value(), t.arg()), fuel - 1);

  const std::string& x = t.name();
  const Comp& tail = t.tail();
  return run(t.head(), fuel - 1).bind([&](const Value& a) { return run(instantiate(tail, x, a), fuel - 1); });
}

}  // namespace olr
