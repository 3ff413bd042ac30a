#include "olr/dlr.hpp"

#include <algorithm>

namespace olr {

Extended BaseDistance::distance(const std::string& a, const std::string& b) const {
  switch (kind) {
    case Kind::Metric: {
      auto x = parse_rational(a);
      auto y = parse_rational(b);
      if (!x || !y) throw Error("metric distance between non-numeric literals " + a + " and " + b);
      return Extended(abs(Rational(*x - *y)));
    }
    case Kind::Discrete:
      return Extended(Rational(a == b ? 0 : 1));
    case Kind::Table: {
      auto it = table.find({a, b});
      return it == table.end() ? Extended::infinity() : it->second;
    }
  }
  return Extended::infinity();
}

bool BaseDistance::holds(const std::string& a, const Extended& v, const std::string& b) const {
  return v.is_infinite() || distance(a, b) <= v;
}

DlrAssignment DlrAssignment::discrete(const Signature& sig) {
  DlrAssignment out;
  for (const auto& [name, _] : sig.bases()) out.bases.emplace(name, BaseDistance{});
  return out;
}

DistTy dsp_of(const DlrAssignment& assign, MonadTag tag, const Ty& ty) {
  switch (ty.kind()) {
    case Ty::Kind::Unit:
      return DistTy::unit();
    case Ty::Kind::Base:
      if (!assign.bases.contains(ty.name())) throw Error("no distance assigned to base type " + ty.name());
      return DistTy::base(ty.name());
    case Ty::Kind::Prod:
      return DistTy::pair(dsp_of(assign, tag, ty.left()), dsp_of(assign, tag, ty.right()));
    case Ty::Kind::Arrow:
      return DistTy::fun(ty.left(), dsp_of(assign, tag, ty.left()), dsp_of_comp(assign, tag, ty.right()));
  }
  throw Error("unknown type");
}

DistTy dsp_of_comp(const DlrAssignment& assign, MonadTag tag, const Ty& ty) {
  return DistTy::comp(tag, dsp_of(assign, tag, ty));
}

DlrEngine::DlrEngine(const Evaluator& ev, const Enumerator& en, DlrAssignment assign, int depth, DlrLimits limits)
    : ev_(ev), en_(en), assign_(std::move(assign)), depth_(depth), limits_(limits) {
  if (depth_ < 1) throw Error("relation depth must be at least 1");
  for (const auto& [name, _] : ev_.signature().bases())
    if (!assign_.bases.contains(name)) throw Error("no distance assigned to base type " + name);
}

const std::vector<Value>& DlrEngine::carrier(const Ty& ty) const {
  std::lock_guard lock(mu_);
  auto it = carriers_.find(ty.str());
  if (it == carriers_.end()) it = carriers_.emplace(ty.str(), en_.values(ty, depth_)).first;
  return it->second;
}

const std::vector<DistVal>& DlrEngine::grid(const Ty& ty) const {
  std::lock_guard lock(mu_);
  if (auto it = grids_.find(ty.str()); it != grids_.end()) return it->second;
  std::vector<DistVal> g = build_grid(ty);
  return grids_.emplace(ty.str(), std::move(g)).first->second;
}

namespace {

std::vector<DistVal> dedup(std::vector<DistVal> in) {
  std::vector<DistVal> out;
  std::set<std::string> seen;
  for (auto& d : in)
    if (seen.insert(d.key()).second) out.push_back(std::move(d));
  return out;
}

}  // namespace

std::vector<DistVal> DlrEngine::build_grid(const Ty& ty) const {
  switch (ty.kind()) {
    case Ty::Kind::Unit:
      return {DistVal::unit()};
    case Ty::Kind::Base: {
      const BaseDistance& bd = assign_.bases.at(ty.name());
      std::vector<Extended> ds{Extended(Rational(0)), Extended::infinity(), bd.self};
      const auto& lits = ev_.signature().literals(ty.name());
      for (const auto& a : lits)
        for (const auto& b : lits) ds.push_back(bd.distance(a, b));
      std::sort(ds.begin(), ds.end());
      ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
      std::vector<DistVal> out;
      for (auto& d : ds) out.push_back(DistVal::base(d));
      return out;
    }
    case Ty::Kind::Prod: {
      std::vector<DistVal> out;
      for (const auto& a : grid(ty.left()))
        for (const auto& b : grid(ty.right())) out.push_back(DistVal::pair(a, b));
      return out;
    }
    case Ty::Kind::Arrow:
      break;
  }

  const Ty& dom = ty.left();
  const Ty& cod = ty.right();
  if (ev_.monad() == MonadTag::Identity) {
    // Every tabulated map, when there are few enough of them.
    std::vector<std::pair<Value, DistVal>> entries;
    for (const auto& a : carrier(dom))
      for (const auto& da : grid(dom)) entries.emplace_back(a, da);
    std::vector<DistVal> outputs;
    for (const auto& b : carrier(cod))
      for (const auto& db : grid(cod))
        outputs.push_back(DistVal::comp(DMVal::unit(MonadTag::Identity, {b, db})));
    long count = 1;
    bool small = !outputs.empty();
    for (std::size_t i = 0; i < entries.size() && small; ++i) {
      if (count > limits_.dfun_limit / static_cast<long>(outputs.size())) small = false;
      count *= static_cast<long>(outputs.size());
    }
    if (small && count <= limits_.dfun_limit) {
      std::vector<DistVal> out;
      std::vector<std::size_t> pick(entries.size(), 0);
      for (;;) {
        DistVal::Table table;
        for (std::size_t i = 0; i < entries.size(); ++i)
          table.emplace(table_key(entries[i].first, entries[i].second),
                        std::pair{entries[i], outputs[pick[i]]});
        out.push_back(DistVal::fun(std::move(table)));
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == outputs.size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
      return out;
    }
  }
  std::vector<DistVal> out;
  for (const auto& f : carrier(ty)) out.push_back(self_distance(f));
  return dedup(std::move(out));
}

bool DlrEngine::delta(const Ty& ty, const Value& v, const DistVal& dv, const Value& w) const {
  switch (ty.kind()) {
    case Ty::Kind::Unit:
      return true;
    case Ty::Kind::Base:
      if (!dv.is(DistVal::Kind::Base)) return false;
      if (!v.is(Value::Kind::Const) || !w.is(Value::Kind::Const))
        throw Error("non-literal value at base type " + ty.name());
      return assign_.bases.at(ty.name()).holds(v.name(), dv.distance(), w.name());
    case Ty::Kind::Prod:
      return dv.is(DistVal::Kind::Pair) && delta(ty.left(), v.first(), dv.first(), w.first()) &&
             delta(ty.right(), v.second(), dv.second(), w.second());
    case Ty::Kind::Arrow:
      break;
  }
  if (!dv.is(DistVal::Kind::Fun)) return false;

  std::lock_guard lock(mu_);
  std::string k = ty.str() + "|" + key(v) + "|" + dv.key() + "|" + key(w);
  if (auto it = memo_.find(k); it != memo_.end()) return it->second;
  const Ty& dom = ty.left();
  bool ok = true;
  for (const auto& a : carrier(dom)) {
    for (const auto& da : grid(dom)) {
      for (const auto& b : carrier(dom)) {
        if (!delta(dom, a, da, b)) continue;
        MVal x = ev_.eval(Comp::app(v, a));
        MVal y = ev_.eval(Comp::app(w, b));
        if (!delta_comp(ty.right(), x, dv.apply(a, da), y)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (!ok) break;
  }
  memo_.emplace(std::move(k), ok);
  return ok;
}

bool DlrEngine::delta_comp(const Ty& ty, const MVal& x, const DistVal& dv, const MVal& y, std::string* why) const {
  if (!dv.is(DistVal::Kind::Comp)) {
    if (why) *why = "distance " + dv.str() + " is not monadic";
    return false;
  }
  return diff_holds(
      x, dv.monadic(), y, [&](const Value& a, const DistVal& w, const Value& b) { return delta(ty, a, w, b); }, why);
}

Gds<Value> DlrEngine::gds(const Ty& ty) const {
  return {carrier(ty), grid(ty), [this, ty](const Value& a, const DistVal& d, const Value& b) {
            return delta(ty, a, d, b);
          }};
}

DistVal DlrEngine::derive(const Term& t, const Bindings& rho, const DistEnv& drho) const {
  if (const auto* v = std::get_if<Value>(&t)) return derive_value(*v, rho, drho);
  return derive_comp(std::get<Comp>(t), rho, drho);
}

DistVal DlrEngine::derive_value(const Value& v, const Bindings& rho, const DistEnv& drho) const {
  switch (v.kind()) {
    case Value::Kind::Var: {
      auto it = drho.find(v.name());
      if (it == drho.end()) throw Error("no distance for variable '" + v.name() + "'");
      return it->second;
    }
    case Value::Kind::Const: {
      auto it = assign_.bases.find(v.base());
      if (it == assign_.bases.end()) throw Error("no distance assigned to base type " + v.base());
      return DistVal::base(it->second.self);
    }
    case Value::Kind::Unit:
      return DistVal::unit();
    case Value::Kind::Pair:
      return DistVal::pair(derive_value(v.first(), rho, drho), derive_value(v.second(), rho, drho));
    case Value::Kind::Lam:
      return derive_lambda(v, rho, drho);
  }
  throw Error("unknown value");
}

DistVal DlrEngine::derive_lambda(const Value& lam, const Bindings& rho, const DistEnv& drho) const {
  auto body_at = [this, lam, rho, drho](const Value& a, const DistVal& da) {
    Bindings r = rho;
    DistEnv d = drho;
    r.insert_or_assign(lam.name(), a);
    d.insert_or_assign(lam.name(), da);
    return derive_comp(lam.body(), r, d);
  };
  DistVal::Table table;
  for (const auto& a : carrier(lam.annotation()))
    for (const auto& da : grid(lam.annotation()))
      table.emplace(table_key(a, da), std::pair{std::pair{a, da}, body_at(a, da)});
  return DistVal::fun(std::move(table), body_at);
}

DistVal DlrEngine::derive_comp(const Comp& t, const Bindings& rho, const DistEnv& drho) const {
  const MonadTag tag = ev_.monad();
  auto unit = [tag](Value v, DistVal d) { return DistVal::comp(DMVal::unit(tag, {std::move(v), std::move(d)})); };
  switch (t.kind()) {
    case Comp::Kind::Return:
      return unit(substitute(t.value(), rho), derive_value(t.value(), rho, drho));
    case Comp::Kind::Fst:
    case Comp::Kind::Snd: {
      const bool first = t.is(Comp::Kind::Fst);
      DistVal d = derive_value(t.value(), rho, drho);
      if (!d.is(DistVal::Kind::Pair)) throw Error("projection of a non-pair distance " + d.str());
      return unit(project(substitute(t.value(), rho), first), first ? d.first() : d.second());
    }
    case Comp::Kind::App: {
      const Value& fn = t.value();
      Value arg = substitute(t.arg(), rho);
      DistVal darg = derive_value(t.arg(), rho, drho);
      if (fn.is(Value::Kind::Lam)) {
        // Same as the tabulated entry, without building the whole table.
        Bindings r = rho;
        DistEnv d = drho;
        r.insert_or_assign(fn.name(), arg);
        d.insert_or_assign(fn.name(), darg);
        return derive_comp(fn.body(), r, d);
      }
      DistVal dfn = derive_value(fn, rho, drho);
      if (!dfn.is(DistVal::Kind::Fun)) throw Error("application of a non-function distance " + dfn.str());
      return dfn.apply(arg, darg);
    }
    case Comp::Kind::Let: {
      DistVal head = derive_comp(t.head(), rho, drho);
      const std::string& x = t.name();
      DMVal out = head.monadic().bind([&](const std::pair<Value, DistVal>& ad) {
        Bindings r = rho;
        DistEnv d = drho;
        r.insert_or_assign(x, ad.first);
        d.insert_or_assign(x, ad.second);
        return derive_comp(t.tail(), r, d).monadic();
      });
      return DistVal::comp(std::move(out));
    }
    case Comp::Kind::Effect:
      return effect_witness(t.name());
  }
  throw Error("unknown computation");
}

DistVal DlrEngine::effect_witness(const std::string& name) const {
  if (auto it = assign_.effect_witness.find(name); it != assign_.effect_witness.end()) return it->second;
  const auto& cfg = ev_.config();
  const MVal& g = interpret_effect(cfg.monad, cfg.interp, ev_.signature(), name);
  return DistVal::comp(g.map([&](const Value& a) { return std::pair<Value, DistVal>(a, self_distance(a)); }));
}

std::vector<std::string> DlrEngine::stability_violations() const {
  std::vector<std::string> out;
  const Signature& sig = ev_.signature();
  for (const auto& [base, lits] : sig.bases()) {
    Ty ty = Ty::base(base);
    for (const auto& lit : lits) {
      Value c = Value::constant(base, lit);
      try {
        DistVal self = self_distance(c);
        if (!delta(ty, c, self, c))
          out.push_back("constant " + lit + " : " + base + " is not at distance " + self.str() + " from itself");
      } catch (const Error& e) {
        out.push_back("constant " + lit + " : " + base + ": " + e.what());
      }
    }
  }
  const auto& cfg = ev_.config();
  for (const auto& eff : sig.effects()) {
    try {
      const MVal& g = interpret_effect(cfg.monad, cfg.interp, sig, eff.name);
      DistVal w = effect_witness(eff.name);
      std::string why;
      if (!delta_comp(eff.result, g, w, g, &why))
        out.push_back("effect " + eff.name + " is not related to itself at " + w.str() +
                      (why.empty() ? "" : " (" + why + ")"));
    } catch (const Error& e) {
      out.push_back("effect " + eff.name + ": " + e.what());
    }
  }
  return out;
}

void DlrEngine::for_each_triple(
    const Context& ctx, const std::function<void(const Bindings&, const DistEnv&, const Bindings&)>& visit) const {
  struct Triple {
    Value a;
    DistVal d;
    Value b;
  };
  const auto& entries = ctx.entries();
  std::vector<std::vector<Triple>> choices;
  for (const auto& [name, ty] : entries) {
    std::vector<Triple> ts;
    for (const auto& a : carrier(ty))
      for (const auto& d : grid(ty))
        for (const auto& b : carrier(ty))
          if (delta(ty, a, d, b)) ts.push_back({a, d, b});
    if (ts.empty()) return;
    choices.push_back(std::move(ts));
  }
  Bindings left, right;
  DistEnv dist;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == entries.size()) {
      visit(left, dist, right);
      return;
    }
    const std::string& name = entries[i].first;
    for (const auto& t : choices[i]) {
      left.insert_or_assign(name, t.a);
      dist.insert_or_assign(name, t.d);
      right.insert_or_assign(name, t.b);
      go(i + 1);
    }
  };
  go(0);
}

CheckReport DlrEngine::check_fundamental(const Context& ctx, const Term& t) const {
  CheckReport report = make_report(ev_, ctx, t, depth_);
  report.stability_violations = stability_violations();
  if (!report.stability_violations.empty()) return report;

  const Ty ty = typecheck(ev_.signature(), ctx, t);
  for_each_triple(ctx, [&](const Bindings& l, const DistEnv& d, const Bindings& r) {
    ++report.cases;
    auto fail = [&](std::string witness) {
      std::string dists;
      for (const auto& [name, dv] : d) dists += (dists.empty() ? "" : ", ") + name + " ~ " + dv.str();
      report.failures.push_back({l, r, "at [" + dists + "]: " + witness});
    };
    if (const auto* v = std::get_if<Value>(&t)) {
      Value a = substitute(*v, l), b = substitute(*v, r);
      DistVal dv = derive_value(*v, l, d);
      if (!delta(ty, a, dv, b)) fail(to_string(a) + " ~" + dv.str() + "~ " + to_string(b));
    } else {
      const Comp& c = std::get<Comp>(t);
      MVal x = ev_.eval(substitute(c, l));
      MVal y = ev_.eval(substitute(c, r));
      DistVal dv = derive_comp(c, l, d);
      std::string why;
      if (!delta_comp(ty, x, dv, y, &why))
        fail(to_literal(x) + " ~" + dv.str() + "~ " + to_literal(y) + (why.empty() ? "" : " (" + why + ")"));
    }
  });
  return report;
}

DlrEngine::Search DlrEngine::distance_search(const Ty& ty, const Comp& t, const Comp& s) const {
  Search out;
  MVal x = ev_.eval(t);
  MVal y = ev_.eval(s);
  const std::vector<DistVal>& g = grid(ty);
  std::vector<DistVal> witnesses;

  auto try_candidate = [&](const DistVal& dv) {
    ++out.searched;
    if (delta_comp(ty, x, dv, y)) witnesses.push_back(dv);
  };

  if (x.is_timeout()) {
    try_candidate(DistVal::comp(DMVal::timeout()));
  } else if (!g.empty()) {
    std::vector<Value> support = x.support();
    std::vector<std::size_t> pick(support.size(), 0);
    for (;;) {
      if (out.searched >= limits_.search_limit) break;
      std::map<std::string, DistVal> w;
      for (std::size_t i = 0; i < support.size(); ++i) w.emplace(key(support[i]), g[pick[i]]);
      try_candidate(DistVal::comp(x.map([&](const Value& a) { return std::pair<Value, DistVal>(a, w.at(key(a))); })));
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == g.size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }

  for (const auto& cand : witnesses) {
    bool minimal = std::none_of(witnesses.begin(), witnesses.end(), [&](const DistVal& other) {
      return other.key() != cand.key() && dist_leq(other, cand);
    });
    if (minimal) {
      out.witness = cand;
      break;
    }
  }
  return out;
}

}  // namespace olr
