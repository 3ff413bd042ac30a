#include <doctest.h>

#include "../support/fixtures.hpp"
#include "olr/dlr.hpp"
#include "olr/gds.hpp"

using namespace olr;

namespace {

Value real(const std::string& q) { return Value::constant("Real", q); }
Value boolean(bool b) { return Value::constant("Bool", b ? "true" : "false"); }
DistVal dist(const std::string& q) { return DistVal::base(*Extended::parse(q)); }
DistVal inf() { return DistVal::base(Extended::infinity()); }

using Entry = std::pair<Value, DistVal>;

}  // namespace

TEST_CASE("distance shapes follow the type") {
  fx::World w(MonadTag::Dist);
  DlrEngine eng(w.ev, w.en, w.s.distances, 2);
  CHECK(eng.dsp(Ty::unit()).is(DistTy::Kind::Unit));
  CHECK(eng.dsp(Ty::base("Real")).is(DistTy::Kind::Base));
  DistTy p = eng.dsp(Ty::prod(Ty::base("Bool"), Ty::base("Real")));
  REQUIRE(p.is(DistTy::Kind::Pair));
  CHECK(p.left() == DistTy::base("Bool"));
  DistTy f = eng.dsp(Ty::arrow(Ty::base("Real"), Ty::base("Bool")));
  REQUIRE(f.is(DistTy::Kind::Fun));
  CHECK(f.domain() == Ty::base("Real"));
  CHECK(f.right().is(DistTy::Kind::Comp));
  CHECK(f.right().monad() == MonadTag::Dist);
  CHECK(eng.dsp_comp(Ty::base("Real")) == DistTy::comp(MonadTag::Dist, DistTy::base("Real")));
}

TEST_CASE("value clauses of the differential relation") {
  fx::World w(MonadTag::Identity, 3);
  DlrEngine eng(w.ev, w.en, w.s.distances, 3);
  const Ty r = Ty::base("Real");
  CHECK(eng.delta(r, real("1"), dist("1/2"), real("3/2")));
  CHECK(eng.delta(r, real("3/2"), dist("1/2"), real("1")));
  CHECK_FALSE(eng.delta(r, real("1"), dist("1/4"), real("3/2")));
  CHECK(eng.delta(r, real("0"), inf(), real("2")));
  CHECK(eng.delta(Ty::base("Bool"), boolean(true), dist("1"), boolean(false)));
  CHECK_FALSE(eng.delta(Ty::base("Bool"), boolean(true), dist("1/2"), boolean(false)));
  CHECK(eng.delta(Ty::unit(), Value::unit(), DistVal::unit(), Value::unit()));

  const Ty pr = Ty::prod(Ty::base("Bool"), r);
  CHECK(eng.delta(pr, Value::pair(boolean(true), real("0")), DistVal::pair(dist("0"), dist("2")),
                  Value::pair(boolean(true), real("2"))));
  CHECK_FALSE(eng.delta(pr, Value::pair(boolean(true), real("0")), DistVal::pair(dist("0"), dist("1")),
                        Value::pair(boolean(true), real("2"))));

  const Ty rr = Ty::arrow(r, r);
  Value id = w.val("\\x:Real. return x");
  Value zero = w.val("\\x:Real. return 0");
  DistVal did = eng.self_distance(id);
  CHECK(eng.delta(rr, id, did, id));
  CHECK_FALSE(eng.delta(rr, id, did, zero));
  CHECK(eng.delta(rr, zero, eng.self_distance(zero), zero));
}

TEST_CASE("lifting examples") {
  fx::World w(MonadTag::Identity);
  DlrEngine eng(w.ev, w.en, w.s.distances, 2);
  auto base = eng.gds(Ty::base("Bool")).delta;
  const Value t = boolean(true), f = boolean(false);

  SUBCASE("identity") {
    auto x = MVal::unit(MonadTag::Identity, t);
    CHECK(diff_holds(x, DMVal::unit(MonadTag::Identity, {t, dist("0")}), x, base));
    CHECK_FALSE(diff_holds(x, DMVal::unit(MonadTag::Identity, {t, dist("0")}), MVal::unit(MonadTag::Identity, f), base));
    CHECK(diff_holds(x, DMVal::unit(MonadTag::Identity, {t, dist("1")}), MVal::unit(MonadTag::Identity, f), base));
    std::string why;
    CHECK_FALSE(diff_holds(x, DMVal::unit(MonadTag::Identity, {f, dist("1")}), x, base, &why));
    CHECK_FALSE(why.empty());
  }
  SUBCASE("powerset with the zero-diagonal delta") {
    auto diag = [](const Value& a, const DistVal& v, const Value& b) {
      return v.distance() == Extended(Rational(0)) && key(a) == key(b);
    };
    auto x = MVal::set({t});
    auto dv = DMVal::set({Entry{t, dist("0")}});
    CHECK(diff_holds(x, dv, MVal::set({t}), diag));
    CHECK_FALSE(diff_holds(x, dv, MVal::set({t, f}), diag));
    CHECK_FALSE(diff_holds(MVal::set({t, f}), dv, MVal::set({t}), diag));
    CHECK(diff_holds(MVal::set({}), DMVal::set({}), MVal::set({}), diag));
  }
  SUBCASE("distributions") {
    auto x = MVal::dist({{t, Rational(1)}});
    auto y = MVal::dist({{f, Rational(1)}});
    CHECK_FALSE(diff_holds(x, DMVal::dist({{Entry{t, dist("0")}, Rational(1)}}), y, base));
    CHECK(diff_holds(x, DMVal::dist({{Entry{t, dist("1")}, Rational(1)}}), y, base));
    auto coin = MVal::dist({{t, Rational(1, 2)}, {f, Rational(1, 2)}});
    auto dv = DMVal::dist({{Entry{t, dist("0")}, Rational(1, 2)}, {Entry{f, dist("0")}, Rational(1, 2)}});
    CHECK(diff_holds(coin, dv, coin, base));
    std::string why;
    CHECK_FALSE(diff_holds(x, dv, coin, base, &why));
    CHECK(why.find("marginal") != std::string::npos);
  }
  SUBCASE("partial and cost") {
    CHECK(diff_holds(MVal::timeout(), DMVal::timeout(), MVal::timeout(), base));
    CHECK_FALSE(diff_holds(MVal::timeout(), DMVal::timeout(), MVal::unit(MonadTag::Partial, t), base));
    auto c = [&](int k) { return MVal::with_cost(Rational(k), t); };
    CHECK(diff_holds(c(1), DMVal::with_cost(Rational(1), {t, dist("0")}), c(1), base));
    CHECK_FALSE(diff_holds(c(1), DMVal::with_cost(Rational(1), {t, dist("0")}), c(2), base));
  }
  SUBCASE("mixed monads are rejected") {
    CHECK_THROWS_AS(diff_holds(MVal::set({t}), DMVal::unit(MonadTag::Identity, {t, dist("0")}), MVal::set({t}), base),
                    Error);
  }
  SUBCASE("the lifted object needs a monadic distance") {
    auto lifted = diff_lift(eng.gds(Ty::base("Bool")));
    auto x = MVal::unit(MonadTag::Identity, t);
    CHECK(lifted.delta(x, DistVal::comp(DMVal::unit(MonadTag::Identity, {t, dist("0")})), x));
    CHECK_FALSE(lifted.delta(x, dist("0"), x));
  }
}

TEST_CASE("identity lifting is the underlying relation") {
  fx::World w(MonadTag::Identity);
  DlrEngine eng(w.ev, w.en, w.s.distances, 2);
  for (const Ty& ty : {Ty::base("Bool"), Ty::base("Real"), Ty::prod(Ty::base("Bool"), Ty::base("Bool"))}) {
    Gds<Value> g = eng.gds(ty);
    REQUIRE_FALSE(g.carrier.empty());
    REQUIRE_FALSE(g.dist_carrier.empty());
    for (const auto& a : g.carrier)
      for (const auto& v : g.dist_carrier)
        for (const auto& b : g.carrier)
          CHECK(diff_holds(MVal::unit(MonadTag::Identity, a), DMVal::unit(MonadTag::Identity, {a, v}),
                           MVal::unit(MonadTag::Identity, b), g.delta) == g.delta(a, v, b));
  }
}

TEST_CASE("reindexing") {
  fx::World w(MonadTag::Identity);
  DlrEngine eng(w.ev, w.en, w.s.distances, 2);
  Gds<Value> reals = eng.gds(Ty::base("Real"));
  auto same = [&](const Gds<Value>& a, const Gds<Value>& b) {
    for (const auto& x : a.carrier)
      for (const auto& v : a.dist_carrier)
        for (const auto& y : a.carrier) CHECK(a.delta(x, v, y) == b.delta(x, v, y));
  };

  std::function<Value(const Value&)> id = [](const Value& v) { return v; };
  same(reindex_dlr(id, reals.carrier, reals), reals);

  std::function<Value(const Value&)> to_zero = [](const Value&) { return real("0"); };
  Gds<Value> flat = reindex_dlr(to_zero, reals.carrier, reals);
  for (const auto& x : flat.carrier)
    for (const auto& v : flat.dist_carrier)
      for (const auto& y : flat.carrier) CHECK(flat.delta(x, v, y));

  std::vector<Value> pairs;
  for (const auto& a : reals.carrier)
    for (const char* b : {"true", "false"}) pairs.push_back(Value::pair(a, Value::constant("Bool", b)));
  std::function<Value(const Value&)> fst = [](const Value& p) { return p.first(); };
  Gds<Value> on_pairs = reindex_dlr(fst, pairs, reals);
  for (const auto& p : pairs)
    for (const auto& v : on_pairs.dist_carrier)
      for (const auto& q : pairs) CHECK(on_pairs.delta(p, v, q) == reals.delta(p.first(), v, q.first()));

  std::function<Value(const Value&)> swap = [](const Value& p) { return Value::pair(p.second(), p.first()); };
  std::function<Value(const Value&)> snd = [](const Value& p) { return p.second(); };
  std::function<Value(const Value&)> fst_after_swap = [&](const Value& p) { return snd(swap(p)); };
  Gds<Value> composed = reindex_dlr(swap, pairs, reindex_dlr(snd, std::vector<Value>{}, reals));
  same(reindex_dlr(fst_after_swap, pairs, reals), composed);
}

TEST_CASE("derivative synthesis") {
  fx::World w(MonadTag::Identity, 3);
  DlrEngine eng(w.ev, w.en, w.s.distances, 3);
  CHECK(eng.derive(w.comp("return 1"), {}, {}) == DistVal::comp(DMVal::unit(MonadTag::Identity, {real("1"), dist("0")})));
  CHECK(eng.derive(w.comp("return x", "(x:Real)"), {{"x", real("1")}}, {{"x", dist("1/2")}}) ==
        DistVal::comp(DMVal::unit(MonadTag::Identity, {real("1"), dist("1/2")})));
  CHECK(eng.derive(w.comp("fst p", "(p:Real * Bool)"), {{"p", Value::pair(real("2"), boolean(true))}},
                   {{"p", DistVal::pair(dist("1"), dist("0"))}}) ==
        DistVal::comp(DMVal::unit(MonadTag::Identity, {real("2"), dist("1")})));

  DistVal did = eng.self_distance(w.val("\\x:Real. return x"));
  REQUIRE(did.is(DistVal::Kind::Fun));
  REQUIRE_FALSE(did.table().empty());
  for (const auto& [_, entry] : did.table()) {
    const auto& [arg, result] = entry;
    CHECK(result == DistVal::comp(DMVal::unit(MonadTag::Identity, arg)));
    CHECK(did.apply(arg.first, arg.second) == result);
  }
  // Arguments off the table go to the synthesized fallback.
  CHECK(did.apply(real("7"), dist("3")) == DistVal::comp(DMVal::unit(MonadTag::Identity, {real("7"), dist("3")})));
  CHECK_THROWS_AS(DistVal::fun({}).apply(real("0"), dist("0")), Error);
}

TEST_CASE("differential fundamental lemma examples") {
  for (MonadTag tag : {MonadTag::Identity, MonadTag::Dist, MonadTag::Powerset}) {
    CAPTURE(to_string(tag));
    fx::World w(tag, 3);
    DlrEngine eng(w.ev, w.en, w.s.distances, 3);
    CHECK(eng.stability_violations().empty());
    for (const auto& [src, params] : std::vector<std::pair<std::string, std::string>>{
             {"return x", "(x:Real)"},
             {"return 0", ""},
             {"let y = (\\z:Real. return z) x in return y", "(x:Real)"},
             {"let b = op#coin in return (b, x)", "(x:Real)"},
             {"f x", "(f:Real -> Real, x:Real)"}}) {
      CAPTURE(src);
      olr::Decl d = w.decl(src, params);
      CheckReport r = eng.check_fundamental(d.params, d.body);
      CHECK(r.passed());
      CHECK(r.cases > 0);
    }
  }
}

TEST_CASE("distance search") {
  SUBCASE("identity") {
    fx::World w(MonadTag::Identity);
    DlrEngine eng(w.ev, w.en, w.s.distances, 2);
    auto s = eng.distance_search(Ty::base("Real"), w.comp("return 1"), w.comp("return 3/2"));
    REQUIRE(s.witness);
    CHECK(*s.witness == DistVal::comp(DMVal::unit(MonadTag::Identity, {real("1"), dist("1/2")})));
    CHECK(s.searched > 1);
    auto same = eng.distance_search(Ty::base("Real"), w.comp("return 2"), w.comp("return 2"));
    REQUIRE(same.witness);
    CHECK(*same.witness == DistVal::comp(DMVal::unit(MonadTag::Identity, {real("2"), dist("0")})));
  }
  SUBCASE("distribution") {
    fx::World w(MonadTag::Dist);
    DlrEngine eng(w.ev, w.en, w.s.distances, 2);
    auto s = eng.distance_search(Ty::base("Bool"), w.comp("op#coin"), w.comp("return true"));
    REQUIRE(s.witness);
    CHECK(*s.witness == DistVal::comp(DMVal::dist({{Entry{boolean(true), dist("0")}, Rational(1, 2)},
                                                    {Entry{boolean(false), dist("1")}, Rational(1, 2)}})));
  }
}

TEST_CASE("lowering a distance below the gap leaves the relation") {
  fx::World w(MonadTag::Identity);
  DlrEngine eng(w.ev, w.en, w.s.distances, 2);
  const auto& g = eng.grid(Ty::base("Real"));
  for (const auto& a : eng.carrier(Ty::base("Real")))
    for (const auto& b : eng.carrier(Ty::base("Real"))) {
      Rational gap = abs(Rational(a.name()) - Rational(b.name()));
      CHECK(eng.delta(Ty::base("Real"), a, DistVal::base(Extended(gap)), b));
      for (const auto& v : g)
        if (v.distance() < Extended(gap)) CHECK_FALSE(eng.delta(Ty::base("Real"), a, v, b));
    }
}

TEST_CASE("distance order and literals") {
  CHECK(dist_leq(dist("1/2"), dist("1")));
  CHECK_FALSE(dist_leq(dist("1"), dist("1/2")));
  CHECK(dist_leq(dist("7"), inf()));
  CHECK_FALSE(dist_leq(inf(), dist("7")));
  CHECK(dist_leq(DistVal::pair(dist("0"), dist("1")), DistVal::pair(dist("1"), dist("1"))));
  CHECK_FALSE(dist_leq(DistVal::pair(dist("0"), dist("2")), DistVal::pair(dist("1"), dist("1"))));
  CHECK_FALSE(dist_leq(dist("0"), DistVal::unit()));

  fx::World w(MonadTag::Dist);
  CHECK(parse_distval(DistTy::base("Real"), "1/2", w.s.sig) == dist("1/2"));
  CHECK(parse_distval(DistTy::base("Real"), "inf", w.s.sig) == inf());
  CHECK(parse_distval(DistTy::pair(DistTy::base("Real"), DistTy::unit()), "(1/2, ())", w.s.sig) ==
        DistVal::pair(dist("1/2"), DistVal::unit()));
  DistVal m = parse_distval(DistTy::comp(MonadTag::Dist, DistTy::base("Bool")), "{(true, 0): 1}", w.s.sig);
  CHECK(m == DistVal::comp(DMVal::dist({{Entry{boolean(true), dist("0")}, Rational(1)}})));
  CHECK(parse_distval(m.is(DistVal::Kind::Comp) ? DistTy::comp(MonadTag::Dist, DistTy::base("Bool")) : DistTy::unit(),
                      m.str(), w.s.sig) == m);
  CHECK_THROWS(parse_distval(DistTy::base("Real"), "-1", w.s.sig));
  CHECK_THROWS(parse_distval(DistTy::base("Real"), "(1, 2)", w.s.sig));
}

TEST_CASE("unstable distances are reported") {
  RunConfig cfg = parse_config(R"json({
    "bases": {"Bool": {"literals": ["true", "false"],
                       "distance": {"kind": "table", "table": [["true", "true", "1"], ["false", "false", "0"]]}}}
  })json");
  Session s = make_session(cfg, {});
  Evaluator ev(s.sig, EvalConfig{MonadTag::Identity, s.interp, cfg.fuel});
  Enumerator en(s.sig);
  DlrEngine eng(ev, en, s.distances, 2);
  auto v = eng.stability_violations();
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().find("true") != std::string::npos);
  Program p = parse_program("val t = return true", s.sig);
  CheckReport r = eng.check_fundamental({}, p.decls.at(0).body);
  CHECK_FALSE(r.passed());
}
