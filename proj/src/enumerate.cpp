#include "olr/enumerate.hpp"

#include <set>

namespace olr {

namespace {

template <class T>
void append_unique(std::vector<T>& out, std::set<std::string>& seen, T item) {
  if (seen.insert(key(item)).second) out.push_back(std::move(item));
}

}  // namespace

Enumerator::Enumerator(const Signature& sig) : sig_(sig) {}

std::vector<Value> Enumerator::values(const Ty& ty, int depth) const { return values(Context{}, ty, depth); }

std::vector<Value> Enumerator::values(const Context& ctx, const Ty& ty, int depth) const {
  sig_.check_type(ty);
  std::lock_guard lock(mu_);
  return values_memo(ctx, ty, depth);
}

std::vector<Comp> Enumerator::comps(const Context& ctx, const Ty& ty, int depth) const {
  sig_.check_type(ty);
  std::lock_guard lock(mu_);
  return comps_memo(ctx, ty, depth);
}

std::vector<Ty> Enumerator::pool(const Context& ctx) const {
  std::vector<Ty> out{Ty::unit()};
  std::set<std::string> seen{"Unit"};
  for (const auto& [name, _] : sig_.bases())
    if (seen.insert(name).second) out.push_back(Ty::base(name));
  for (const auto& [_, t] : ctx.entries())
    if (seen.insert(t.str()).second) out.push_back(t);
  return out;
}

std::string Enumerator::fresh(const Context& ctx) const {
  std::string n = "x" + std::to_string(ctx.size());
  while (ctx.lookup(n)) n += "'";
  return n;
}

const std::vector<Value>& Enumerator::values_memo(const Context& ctx, const Ty& ty, int depth) const {
  Key k{ctx.str(), ty.str(), depth};
  if (auto it = value_memo_.find(k); it != value_memo_.end()) return it->second;

  std::vector<Value> out;
  std::set<std::string> seen;
  if (depth >= 1) {
    // Monotone in depth: everything from depth-1 comes first.
    if (depth > 1)
      for (const auto& v : values_memo(ctx, ty, depth - 1)) append_unique(out, seen, v);
    for (const auto& [x, t] : ctx.entries())
      if (t == ty) append_unique(out, seen, Value::var(x));
    switch (ty.kind()) {
      case Ty::Kind::Unit:
        append_unique(out, seen, Value::unit());
        break;
      case Ty::Kind::Base:
        for (const auto& lit : sig_.literals(ty.name())) append_unique(out, seen, Value::constant(ty.name(), lit));
        break;
      case Ty::Kind::Prod:
        if (depth >= 2) {
          const auto lhs = values_memo(ctx, ty.left(), depth - 1);
          const auto rhs = values_memo(ctx, ty.right(), depth - 1);
          for (const auto& a : lhs)
            for (const auto& b : rhs) append_unique(out, seen, Value::pair(a, b));
        }
        break;
      case Ty::Kind::Arrow:
        if (depth >= 2) {
          std::string x = fresh(ctx);
          Context inner = ctx.extended(x, ty.left());
          for (const auto& body : comps_memo(inner, ty.right(), depth - 1))
            append_unique(out, seen, Value::lam(x, ty.left(), body));
        }
        break;
    }
  }
  return value_memo_.emplace(k, std::move(out)).first->second;
}

const std::vector<Comp>& Enumerator::comps_memo(const Context& ctx, const Ty& ty, int depth) const {
  Key k{ctx.str(), ty.str(), depth};
  if (auto it = comp_memo_.find(k); it != comp_memo_.end()) return it->second;

  std::vector<Comp> out;
  std::set<std::string> seen;
  if (depth >= 1) {
    if (depth > 1)
      for (const auto& c : comps_memo(ctx, ty, depth - 1)) append_unique(out, seen, c);
    for (const auto& e : sig_.effects())
      if (e.result == ty) append_unique(out, seen, Comp::effect(e.name));
  }
  if (depth >= 2) {
    const int sub = depth - 1;
    for (const auto& v : values_memo(ctx, ty, sub)) append_unique(out, seen, Comp::ret(v));

    const auto ground = pool(ctx);

    // Application: context functions and beta-redexes over ground arguments.
    for (const auto& [f, ft] : ctx.entries()) {
      if (!ft.is(Ty::Kind::Arrow) || !(ft.right() == ty)) continue;
      for (const auto& a : values_memo(ctx, ft.left(), sub)) append_unique(out, seen, Comp::app(Value::var(f), a));
    }
    for (const auto& arg_ty : ground) {
      Ty fn_ty = Ty::arrow(arg_ty, ty);
      const auto fns = values_memo(ctx, fn_ty, sub);
      const auto args = values_memo(ctx, arg_ty, sub);
      for (const auto& fn : fns) {
        if (!fn.is(Value::Kind::Lam)) continue;
        for (const auto& a : args) append_unique(out, seen, Comp::app(fn, a));
      }
    }

    // Projections: context pairs and pair literals with a ground partner.
    for (const auto& [p, pt] : ctx.entries()) {
      if (!pt.is(Ty::Kind::Prod)) continue;
      if (pt.left() == ty) append_unique(out, seen, Comp::fst(Value::var(p)));
      if (pt.right() == ty) append_unique(out, seen, Comp::snd(Value::var(p)));
    }
    for (const auto& other : ground) {
      for (const auto& v : values_memo(ctx, Ty::prod(ty, other), sub))
        if (v.is(Value::Kind::Pair)) append_unique(out, seen, Comp::fst(v));
      for (const auto& v : values_memo(ctx, Ty::prod(other, ty), sub))
        if (v.is(Value::Kind::Pair)) append_unique(out, seen, Comp::snd(v));
    }

    // Sequencing through a ground intermediate type.
    std::string x = fresh(ctx);
    for (const auto& mid : ground) {
      const auto heads = comps_memo(ctx, mid, sub);
      if (heads.empty()) continue;
      const auto tails = comps_memo(ctx.extended(x, mid), ty, sub);
      for (const auto& h : heads)
        for (const auto& t : tails) append_unique(out, seen, Comp::let(x, h, t));
    }
  }
  return comp_memo_.emplace(k, std::move(out)).first->second;
}

std::vector<Value> enumerate_values(const Signature& sig, const Ty& ty, int depth) {
  return Enumerator(sig).values(ty, depth);
}

}  // namespace olr
