#include "olr/logrel.hpp"

namespace olr {

Rel Rel::total(std::vector<Value> left, std::vector<Value> right) {
  Rel r{std::move(left), std::move(right), {}};
  for (const auto& a : r.left)
    for (const auto& b : r.right) r.pairs.emplace(key(a), key(b));
  return r;
}

Rel Rel::diagonal(const std::vector<Value>& carrier) {
  Rel r{carrier, carrier, {}};
  for (const auto& a : carrier) r.pairs.emplace(key(a), key(a));
  return r;
}

bool MRel::contains(const MVal& m, const MVal& n) const {
  if (m.tag() != tag_ || n.tag() != tag_)
    throw Error("element outside the lifted relation's monad " + std::string(to_string(tag_)));
  return barr_holds(m, n, [&](const Value& a, const Value& b) { return rel_.holds(a, b); });
}

MRel barr_lift(MonadTag tag, Rel r) { return MRel(tag, std::move(r)); }

bool BaseRel::holds(const std::string& a, const std::string& b) const {
  switch (kind) {
    case Kind::Identity:
      return a == b;
    case Kind::Total:
      return true;
    case Kind::Pairs:
      return pairs.contains({a, b});
  }
  return false;
}

RelAssignment RelAssignment::identity(const Signature& sig) {
  RelAssignment out;
  for (const auto& [name, _] : sig.bases()) out.bases.emplace(name, BaseRel{});
  return out;
}

LogicalRelation::LogicalRelation(const Evaluator& ev, const Enumerator& en, RelAssignment assign, int depth,
                                 CompLift lift)
    : ev_(ev), en_(en), assign_(std::move(assign)), depth_(depth), lift_(std::move(lift)) {
  if (depth_ < 1) throw Error("relation depth must be at least 1");
}

const std::vector<Value>& LogicalRelation::carrier(const Ty& ty) const {
  std::lock_guard lock(mu_);
  auto it = carriers_.find(ty.str());
  if (it == carriers_.end()) it = carriers_.emplace(ty.str(), en_.values(ty, depth_)).first;
  return it->second;
}

bool LogicalRelation::related(const Ty& ty, const Value& v, const Value& w) const {
  switch (ty.kind()) {
    case Ty::Kind::Unit:
      return true;
    case Ty::Kind::Base: {
      auto it = assign_.bases.find(ty.name());
      if (it == assign_.bases.end()) throw Error("no relation assigned to base type " + ty.name());
      if (!v.is(Value::Kind::Const) || !w.is(Value::Kind::Const))
        throw Error("non-literal value at base type " + ty.name());
      return it->second.holds(v.name(), w.name());
    }
    case Ty::Kind::Prod:
      return related(ty.left(), v.first(), w.first()) && related(ty.right(), v.second(), w.second());
    case Ty::Kind::Arrow:
      break;
  }

  std::lock_guard lock(mu_);
  std::string k = ty.str() + "|" + key(v) + "|" + key(w);
  if (auto it = memo_.find(k); it != memo_.end()) return it->second;
  bool ok = true;
  const auto& args = carrier(ty.left());
  for (const auto& a : args) {
    for (const auto& b : args) {
      if (!related(ty.left(), a, b)) continue;
      if (!related_comp(ty.right(), Comp::app(v, a), Comp::app(w, b))) {
        ok = false;
        break;
      }
    }
    if (!ok) break;
  }
  memo_.emplace(std::move(k), ok);
  return ok;
}

bool LogicalRelation::related_comp(const Ty& ty, const Comp& t, const Comp& s) const {
  return related_mval(ty, ev_.eval(t), ev_.eval(s));
}

bool LogicalRelation::related_mval(const Ty& ty, const MVal& m, const MVal& n) const {
  if (lift_) return lift_(*this, ty, m, n);
  return barr_holds(m, n, [&](const Value& a, const Value& b) { return related(ty, a, b); });
}

Rel LogicalRelation::materialize(const Ty& ty) const {
  const auto& c = carrier(ty);
  Rel r{c, c, {}};
  for (const auto& a : c)
    for (const auto& b : c)
      if (related(ty, a, b)) r.pairs.emplace(key(a), key(b));
  return r;
}

std::vector<std::string> stability_violations(const LogicalRelation& lr) {
  std::vector<std::string> out;
  const Signature& sig = lr.evaluator().signature();
  for (const auto& [base, lits] : sig.bases()) {
    Ty ty = Ty::base(base);
    for (const auto& lit : lits) {
      Value c = Value::constant(base, lit);
      try {
        if (!lr.related(ty, c, c)) out.push_back("constant " + lit + " : " + base + " is not self-related");
      } catch (const Error& e) {
        out.push_back(std::string("constant ") + lit + " : " + base + ": " + e.what());
      }
    }
  }
  const auto& cfg = lr.evaluator().config();
  for (const auto& eff : sig.effects()) {
    try {
      const MVal& g = interpret_effect(cfg.monad, cfg.interp, sig, eff.name);
      if (!lr.related_mval(eff.result, g, g))
        out.push_back("effect " + eff.name + " = " + to_literal(g) + " is not related to itself");
    } catch (const Error& e) {
      out.push_back("effect " + eff.name + ": " + e.what());
    }
  }
  return out;
}

void for_each_related_subst(const LogicalRelation& lr, const Context& ctx,
                            const std::function<void(const Bindings&, const Bindings&)>& visit) {
  const auto& entries = ctx.entries();
  std::vector<std::vector<std::pair<Value, Value>>> choices;
  choices.reserve(entries.size());
  for (const auto& [name, ty] : entries) {
    std::vector<std::pair<Value, Value>> related;
    const auto& c = lr.carrier(ty);
    for (const auto& a : c)
      for (const auto& b : c)
        if (lr.related(ty, a, b)) related.emplace_back(a, b);
    if (related.empty()) return;
    choices.push_back(std::move(related));
  }
  Bindings left, right;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == entries.size()) {
      visit(left, right);
      return;
    }
    const std::string& name = entries[i].first;
    for (const auto& [a, b] : choices[i]) {
      left.insert_or_assign(name, a);
      right.insert_or_assign(name, b);
      go(i + 1);
    }
  };
  go(0);
}

std::string describe(const Bindings& b) {
  std::string out = "[";
  bool first = true;
  for (const auto& [name, v] : b) {
    if (!first) out += ", ";
    first = false;
    out += name + " := " + to_string(v);
  }
  return out + "]";
}

CheckReport make_report(const Evaluator& ev, const Context& ctx, const Term& t, int depth) {
  CheckReport r;
  r.term = to_string(t);
  r.context = ctx.str();
  r.type = typecheck(ev.signature(), ctx, t).str();
  r.monad = ev.monad();
  r.depth = depth;
  return r;
}

CheckReport check_fundamental(const LogicalRelation& lr, const Context& ctx, const Term& t) {
  CheckReport report = make_report(lr.evaluator(), ctx, t, lr.depth());
  report.stability_violations = stability_violations(lr);
  if (!report.stability_violations.empty()) return report;

  const Ty ty = typecheck(lr.evaluator().signature(), ctx, t);
  for_each_related_subst(lr, ctx, [&](const Bindings& l, const Bindings& r) {
    ++report.cases;
    if (const auto* v = std::get_if<Value>(&t)) {
      Value a = substitute(*v, l), b = substitute(*v, r);
      if (!lr.related(ty, a, b))
        report.failures.push_back({l, r, to_string(a) + " vs " + to_string(b)});
    } else {
      const Comp& c = std::get<Comp>(t);
      MVal m = lr.evaluator().eval(substitute(c, l));
      MVal n = lr.evaluator().eval(substitute(c, r));
      if (!lr.related_mval(ty, m, n))
        report.failures.push_back({l, r, to_literal(m) + " vs " + to_literal(n)});
    }
  });
  return report;
}

}  // namespace olr
