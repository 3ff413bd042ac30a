#include <doctest.h>

#include <functional>

#include "../support/fixtures.hpp"
#include "olr/coherence.hpp"
#include "olr/corpus.hpp"

using namespace olr;

namespace {

// Four Real payloads and a family of monadic elements over them per monad.
struct Family {
  std::vector<Value> pts;
  std::vector<MVal> elems;
};

Family family(const fx::World& w, MonadTag tag) {
  Family f;
  for (const char* lit : {"0", "1/2", "1", "2"}) f.pts.push_back(w.val(lit));
  const auto& p = f.pts;
  switch (tag) {
    case MonadTag::Identity:
      for (const auto& v : p) f.elems.push_back(MVal::unit(tag, v));
      break;
    case MonadTag::Partial:
      f.elems.push_back(MVal::timeout());
      for (const auto& v : p) f.elems.push_back(MVal::unit(tag, v));
      break;
    case MonadTag::Powerset:
      for (unsigned s = 0; s < 16; ++s) {
        std::vector<Value> xs;
        for (unsigned i = 0; i < 4; ++i)
          if ((s >> i) & 1u) xs.push_back(p[i]);
        f.elems.push_back(MVal::set(xs));
      }
      break;
    case MonadTag::Dist:
      for (unsigned s = 1; s < 16; ++s) {
        std::vector<std::pair<Value, Rational>> uniform, skewed;
        int n = __builtin_popcount(s);
        const Rational share(1, n);
        Rational left(1);
        for (unsigned i = 0; i < 4; ++i)
          if ((s >> i) & 1u) {
            uniform.emplace_back(p[i], share);
            Rational wgt = (--n == 0) ? left : Rational(left / 2);
            left -= wgt;
            skewed.emplace_back(p[i], wgt);
          }
        f.elems.push_back(MVal::dist(uniform));
        f.elems.push_back(MVal::dist(skewed));
      }
      break;
    case MonadTag::Cost:
      for (const char* c : {"0", "1/2", "2"})
        for (const auto& v : p) f.elems.push_back(MVal::with_cost(*parse_rational(c), v));
      break;
  }
  return f;
}

std::function<MVal(const Value&)> kernel(const Family& f, std::size_t seed) {
  return [&f, seed](const Value& v) {
    std::size_t i = 0;
    while (key(f.pts[i]) != key(v)) ++i;
    return f.elems[(i * (seed + 3) + seed) % f.elems.size()];
  };
}

Rational mass(const MVal& m) {
  Rational total(0);
  for (const auto& [_, e] : m.entries()) total += e.weight;
  return total;
}

}  // namespace

TEST_CASE("unit and bind examples") {
  fx::World w(MonadTag::Dist);
  Value t = w.val("true"), f = w.val("false"), a = w.val("()");
  CHECK(to_literal(m_unit(MonadTag::Dist, t)) == "{true: 1}");
  CHECK(to_literal(m_unit(MonadTag::Powerset, a)) == "{()}");
  MVal c = m_unit(MonadTag::Cost, t);
  CHECK(c.cost() == 0);
  CHECK(key(c.only()) == key(t));

  MVal coin = MVal::dist({{t, Rational(1, 2)}, {f, Rational(1, 2)}});
  MVal out = m_bind(coin, [&](const Value&) { return MVal::unit(MonadTag::Dist, a); });
  CHECK(out == MVal::unit(MonadTag::Dist, a));

  MVal both = MVal::set({t, f});
  MVal img = m_bind(both, [&](const Value& v) { return MVal::set({Value::pair(v, v)}); });
  CHECK(img == MVal::set({Value::pair(t, t), Value::pair(f, f)}));

  // Writer bind adds costs in the monoid of nonnegative rationals.
  for (const char* x : {"0", "2", "1/3"})
    for (const char* y : {"0", "3", "5/6"}) {
      Rational cx = *parse_rational(x), cy = *parse_rational(y);
      MVal r = m_bind(MVal::with_cost(cx, t), [&](const Value&) { return MVal::with_cost(cy, f); });
      CHECK(r.cost() == cx + cy);
      CHECK(key(r.only()) == key(f));
    }
  CHECK(m_bind(MVal::with_cost(2, t), [&](const Value&) { return MVal::with_cost(3, f); }).cost() == 5);
}

TEST_CASE("timeout propagates through bind") {
  fx::World w(MonadTag::Partial);
  bool called = false;
  MVal r = m_bind(MVal::timeout(), [&](const Value& v) {
    called = true;
    return MVal::unit(MonadTag::Partial, v);
  });
  CHECK(r.is_timeout());
  CHECK_FALSE(called);
}

TEST_CASE("monad laws on four payloads") {
  fx::World w(MonadTag::Identity);
  for (MonadTag tag : kAllMonads) {
    CAPTURE(to_string(tag));
    Family f = family(w, tag);
    auto ret = [tag](const Value& v) { return MVal::unit(tag, v); };
    for (std::size_t s = 0; s < 5; ++s) {
      auto k = kernel(f, s);
      auto h = kernel(f, s + 7);
      for (const auto& v : f.pts) CHECK(m_bind(MVal::unit(tag, v), k) == k(v));
      for (const auto& m : f.elems) {
        CHECK(m_bind(m, ret) == m);
        MVal lhs = m_bind(m_bind(m, k), h);
        MVal rhs = m_bind(m, [&](const Value& v) { return m_bind(k(v), h); });
        CHECK(lhs == rhs);
        if (tag == MonadTag::Dist) CHECK(mass(lhs) == 1);
      }
    }
  }
}

TEST_CASE("cost of a bind chain is the sum of step costs") {
  fx::World w(MonadTag::Cost);
  Value v = w.val("1");
  const Rational steps[] = {Rational(1, 2), Rational(0), Rational(7, 3), Rational(1)};
  MVal m = MVal::with_cost(steps[0], v);
  Rational total = steps[0];
  for (int i = 1; i < 4; ++i) {
    m = m_bind(m, [&](const Value& x) { return MVal::with_cost(steps[i], x); });
    total += steps[i];
    CHECK(m.cost() == total);
  }
}

TEST_CASE("distribution invariants are enforced") {
  fx::World w(MonadTag::Dist);
  Value t = w.val("true"), f = w.val("false");
  CHECK_THROWS_AS(MVal::dist({{t, Rational(1, 2)}}), Error);
  CHECK_THROWS_AS(MVal::dist({{t, Rational(3, 2)}, {f, Rational(-1, 2)}}), Error);
  CHECK_THROWS_AS(MVal::with_cost(-1, t), Error);
  // Alpha-variants collapse into one element.
  Value l1 = Value::lam("a", Ty::base("Bool"), Comp::ret(Value::var("a")));
  Value l2 = Value::lam("b", Ty::base("Bool"), Comp::ret(Value::var("b")));
  CHECK(MVal::set({l1, l2}).size() == 1);
  CHECK(MVal::dist({{l1, Rational(1, 2)}, {l2, Rational(1, 2)}}).weight(key(l1)) == 1);
}

TEST_CASE("literals round-trip in every monad") {
  const std::pair<MonadTag, const char*> cases[] = {
      {MonadTag::Identity, "(true, 1/2)"},  {MonadTag::Partial, "some(false)"},
      {MonadTag::Partial, "timeout"},       {MonadTag::Powerset, "{0, 1/2, 2}"},
      {MonadTag::Powerset, "{}"},           {MonadTag::Dist, "{1: 1/3, 2: 2/3}"},
      {MonadTag::Cost, "cost(3/2, ())"},
  };
  for (const auto& [tag, text] : cases) {
    fx::World w(tag);
    MVal m = w.mval(text);
    CHECK(w.mval(to_literal(m)) == m);
  }
  fx::World d(MonadTag::Dist);
  CHECK_THROWS_AS(d.mval("{true: 1/2}"), Error);
  CHECK_THROWS(d.mval("{true: 1/2, 7: 1/2}"));
}

TEST_CASE("effect interpretations") {
  fx::World dist(MonadTag::Dist), pow(MonadTag::Powerset), cost(MonadTag::Cost);
  CHECK(to_literal(interpret_effect(MonadTag::Dist, dist.s.interp, dist.s.sig, "coin")) ==
        to_literal(dist.mval("{true: 1/2, false: 1/2}")));
  CHECK(interpret_effect(MonadTag::Powerset, pow.s.interp, pow.s.sig, "coin") == pow.mval("{true, false}"));
  MVal tick = interpret_effect(MonadTag::Cost, cost.s.interp, cost.s.sig, "tick");
  CHECK(tick.cost() == 1);
  CHECK(tick.only().is(Value::Kind::Unit));

  CHECK_THROWS_AS(interpret_effect(MonadTag::Dist, dist.s.interp, dist.s.sig, "dice"), EvalError);
  CHECK_THROWS_AS(interpret_effect(MonadTag::Cost, dist.s.interp, dist.s.sig, "coin"), EvalError);

  EffectInterp bad{MonadTag::Dist, {{"coin", dist.mval("{(): 1}")}}};
  CHECK_THROWS(validate_interp(bad, dist.s.sig));
}

TEST_CASE("evaluation examples") {
  fx::World id(MonadTag::Identity), pow(MonadTag::Powerset), dist(MonadTag::Dist);
  CHECK(id.ev.eval(id.comp("return true")) == id.mval("true"));
  CHECK(pow.ev.eval(pow.comp("(\\x:Bool. return x) true")) == pow.mval("{true}"));
  CHECK(dist.ev.eval(dist.comp("let x = op#coin in return x")) == dist.mval("{true: 1/2, false: 1/2}"));
  CHECK(dist.ev.eval(dist.comp("snd (1, (true, ()))")) == dist.mval("{(true, ()): 1}"));
  CHECK(dist.ev.eval(dist.comp("let x = op#coin in let y = op#coin in return (x, y)")) ==
        dist.mval("{(true, true): 1/4, (true, false): 1/4, (false, true): 1/4, (false, false): 1/4}"));
  fx::World cost(MonadTag::Cost);
  CHECK(cost.ev.eval(cost.comp("let u = op#tick in let v = op#tick in op#coin")) == cost.mval("cost(3, true)"));
}

TEST_CASE("fuel bounds evaluation") {
  std::string nested = "return true";
  for (int i = 0; i < 6; ++i) nested = "let x" + std::to_string(i) + " = return () in " + nested;
  fx::World part(MonadTag::Partial), id(MonadTag::Identity);
  CHECK(part.ev.eval(part.comp(nested), 3).is_timeout());
  CHECK(part.ev.eval(part.comp(nested), 100) == part.mval("some(true)"));
  CHECK_THROWS_AS(id.ev.eval(id.comp(nested), 3), FuelExhausted);
  CHECK_THROWS_AS(id.ev.eval(Comp::ret(Value::var("x"))), Error);
}

TEST_CASE("evaluation preserves types and ignores alpha-variants") {
  for (MonadTag tag : kAllMonads) {
    CAPTURE(to_string(tag));
    fx::World w(tag);
    for (const auto& t : closed_corpus(w.s.sig, 3, 200)) {
      const Comp* c = std::get_if<Comp>(&t);
      if (!c) continue;
      Ty ty = typecheck(w.s.sig, {}, t);
      for (const auto& v : w.ev.eval(*c).support()) CHECK(typecheck_value(w.s.sig, {}, v) == ty);
    }
    Comp body = w.comp("f true", "(f:Bool -> Bool)");
    for (const auto& f : w.en.values(Ty::arrow(Ty::base("Bool"), Ty::base("Bool")), 3)) {
      Value g = Value::lam("other", f.annotation(), instantiate(f.body(), f.name(), Value::var("other")));
      CHECK(w.ev.eval(substitute(body, {{"f", f}})) == w.ev.eval(substitute(body, {{"f", g}})));
    }
  }
}

TEST_CASE("coherence examples") {
  fx::World id(MonadTag::Identity), dist(MonadTag::Dist);
  auto r = check_coherence(id.ev, Law::Return, id.term("return true"));
  CHECK(r.pass);
  CHECK(r.left_path == r.right_path);
  CHECK(check_coherence(id.ev, Law::Application, id.term("(\\x:Bool. return x) true")).pass);
  CHECK(check_coherence(dist.ev, Law::Sequencing, dist.term("let x = op#coin in return x")).pass);
  CHECK(check_coherence(dist.ev, Law::Effect, dist.term("op#coin")).pass);
  CHECK(check_coherence(dist.ev, Law::Projection, dist.term("fst (true, 1)")).pass);
  CHECK(check_coherence(dist.ev, Law::PairTriangle, dist.term("(true, 1)")).pass);
  CHECK(check_coherence(dist.ev, Law::UnitTriangle, dist.term("()")).pass);
  CHECK(check_coherence(dist.ev, Law::ConstTriangle, dist.term("1/2")).pass);
  CHECK(check_coherence(dist.ev, Law::LambdaTriangle, dist.term("\\x:Bool. return (x, x)"), {}, dist.val("false"))
            .pass);
  CHECK_THROWS_AS(check_coherence(id.ev, Law::Return, id.term("op#coin")), Error);
  CHECK_THROWS_AS(check_coherence(id.ev, Law::LambdaTriangle, id.term("\\x:Bool. return x")), Error);
}

TEST_CASE("applicable laws follow the head constructor") {
  fx::World w(MonadTag::Identity);
  CHECK(applicable_laws(w.term("return true")) == std::vector<Law>{Law::Return});
  CHECK(applicable_laws(w.term("op#coin")) == std::vector<Law>{Law::Effect});
  CHECK(applicable_laws(w.term("let x = op#coin in return x")) == std::vector<Law>{Law::Sequencing});
  CHECK(applicable_laws(w.term("\\x:Bool. return x")) == std::vector<Law>{Law::LambdaTriangle});
  CHECK(applicable_laws(w.term("1")) == std::vector<Law>{Law::ConstTriangle});
}

TEST_CASE("open terms are checked under a closing substitution") {
  fx::World w(MonadTag::Powerset);
  Term t = w.term("let y = op#coin in return (x, y)", "(x:Real)");
  for (const auto& r : check_all_laws(w.ev, w.en, t, {{"x", w.val("3/2")}}, 2)) CHECK(r.pass);
  CHECK_THROWS(check_all_laws(w.ev, w.en, t, {}, 2));
}
