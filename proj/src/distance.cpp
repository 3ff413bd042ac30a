#include "olr/distance.hpp"

#include <optional>

#include "literal.hpp"

namespace olr {

struct DistTy::Node {
  Kind kind;
  std::string name;
  std::vector<DistTy> kids;
  std::vector<Ty> domain;
  MonadTag tag = MonadTag::Identity;
  std::string text;
};

namespace {

std::string comp_text(MonadTag tag, const DistTy& payload) {
  return "T" + std::string(to_string(tag)) + "(" + payload.str() + ")";
}

}  // namespace

DistTy DistTy::unit() { return DistTy(std::make_shared<Node>(Node{Kind::Unit, {}, {}, {}, {}, "1"})); }

DistTy DistTy::base(std::string name) {
  std::string text = "D" + name;
  return DistTy(std::make_shared<Node>(Node{Kind::Base, std::move(name), {}, {}, {}, std::move(text)}));
}

DistTy DistTy::pair(DistTy first, DistTy second) {
  std::string text = "(" + first.str() + " x " + second.str() + ")";
  return DistTy(std::make_shared<Node>(Node{Kind::Pair, {}, {std::move(first), std::move(second)}, {}, {}, text}));
}

DistTy DistTy::fun(Ty domain, DistTy domain_dist, DistTy codomain) {
  std::string text = "(" + domain.str() + " x " + domain_dist.str() + " => " + codomain.str() + ")";
  return DistTy(std::make_shared<Node>(
      Node{Kind::Fun, {}, {std::move(domain_dist), std::move(codomain)}, {std::move(domain)}, {}, text}));
}

DistTy DistTy::comp(MonadTag tag, DistTy payload) {
  std::string text = comp_text(tag, payload);
  return DistTy(std::make_shared<Node>(Node{Kind::Comp, {}, {std::move(payload)}, {}, tag, std::move(text)}));
}

DistTy::Kind DistTy::kind() const { return node_->kind; }

const std::string& DistTy::name() const {
  if (!is(Kind::Base)) throw Error("distance shape " + str() + " is not a base");
  return node_->name;
}

const Ty& DistTy::domain() const {
  if (!is(Kind::Fun)) throw Error("distance shape " + str() + " is not a function shape");
  return node_->domain.front();
}

MonadTag DistTy::monad() const {
  if (!is(Kind::Comp)) throw Error("distance shape " + str() + " is not monadic");
  return node_->tag;
}

const DistTy& DistTy::left() const {
  if (node_->kids.empty()) throw Error("distance shape " + str() + " has no components");
  return node_->kids.front();
}

const DistTy& DistTy::right() const {
  if (node_->kids.size() < 2) throw Error("distance shape " + str() + " has no second component");
  return node_->kids[1];
}

std::string DistTy::str() const { return node_->text; }

struct DistVal::Node {
  Kind kind;
  Extended d;
  std::vector<DistVal> kids;
  Table table;
  Fn fallback;
  std::optional<DMVal> m;
  std::string key;
};

namespace {

std::string print_payload(const std::pair<Value, DistVal>& p) {
  return "(" + to_string(canonical(p.first)) + ", " + p.second.str() + ")";
}

}  // namespace

std::string table_key(const Value& arg, const DistVal& darg) { return key(arg) + "|" + darg.key(); }

DistVal DistVal::unit() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Unit;
  n->key = "()";
  return DistVal(std::move(n));
}

DistVal DistVal::base(Extended d) {
  if (!d.is_infinite() && sgn(d.value()) < 0) throw Error("negative distance " + d.str());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Base;
  n->key = d.str();
  n->d = std::move(d);
  return DistVal(std::move(n));
}

DistVal DistVal::pair(DistVal first, DistVal second) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pair;
  n->key = "(" + first.key() + ", " + second.key() + ")";
  n->kids = {std::move(first), std::move(second)};
  return DistVal(std::move(n));
}

DistVal DistVal::fun(Table table, Fn fallback) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Fun;
  std::string k = "[";
  bool first = true;
  for (const auto& [tk, entry] : table) {
    if (!first) k += "; ";
    first = false;
    k += tk + " => " + entry.second.key();
  }
  n->key = k + "]";
  n->table = std::move(table);
  n->fallback = std::move(fallback);
  return DistVal(std::move(n));
}

DistVal DistVal::comp(DMVal m) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Comp;
  n->key = m.key();
  n->m = std::move(m);
  return DistVal(std::move(n));
}

DistVal::Kind DistVal::kind() const { return node_->kind; }

const Extended& DistVal::distance() const {
  if (!is(Kind::Base)) throw Error("distance " + str() + " is not a base distance");
  return node_->d;
}

const DistVal& DistVal::first() const {
  if (!is(Kind::Pair)) throw Error("distance " + str() + " is not a pair");
  return node_->kids[0];
}

const DistVal& DistVal::second() const {
  if (!is(Kind::Pair)) throw Error("distance " + str() + " is not a pair");
  return node_->kids[1];
}

const DistVal::Table& DistVal::table() const {
  if (!is(Kind::Fun)) throw Error("distance " + str() + " is not a function distance");
  return node_->table;
}

const DMVal& DistVal::monadic() const {
  if (!is(Kind::Comp)) throw Error("distance " + str() + " is not monadic");
  return *node_->m;
}

DistVal DistVal::apply(const Value& arg, const DistVal& darg) const {
  const Table& t = table();
  if (auto it = t.find(table_key(arg, darg)); it != t.end()) return it->second.second;
  if (node_->fallback) return node_->fallback(arg, darg);
  throw Error("distance function undefined at " + to_string(arg) + ", " + darg.str());
}

const std::string& DistVal::key() const { return node_->key; }

std::string DistVal::str() const {
  switch (kind()) {
    case Kind::Unit:
      return "()";
    case Kind::Base:
      return node_->d.str();
    case Kind::Pair:
      return "(" + first().str() + ", " + second().str() + ")";
    case Kind::Fun: {
      std::string s = "[";
      bool first_entry = true;
      for (const auto& [_, entry] : node_->table) {
        if (!first_entry) s += "; ";
        first_entry = false;
        s += to_string(canonical(entry.first.first)) + ", " + entry.first.second.str() + " => " + entry.second.str();
      }
      return s + "]";
    }
    case Kind::Comp:
      return detail::print_monadic<std::pair<Value, DistVal>>(*node_->m, print_payload);
  }
  return {};
}

bool dist_leq(const DistVal& a, const DistVal& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case DistVal::Kind::Unit:
      return true;
    case DistVal::Kind::Base:
      return a.distance() <= b.distance();
    case DistVal::Kind::Pair:
      return dist_leq(a.first(), b.first()) && dist_leq(a.second(), b.second());
    case DistVal::Kind::Fun: {
      const auto& ta = a.table();
      const auto& tb = b.table();
      if (ta.size() != tb.size()) return false;
      for (auto ia = ta.begin(), ib = tb.begin(); ia != ta.end(); ++ia, ++ib)
        if (ia->first != ib->first || !dist_leq(ia->second.second, ib->second.second)) return false;
      return true;
    }
    case DistVal::Kind::Comp: {
      const DMVal& ma = a.monadic();
      const DMVal& mb = b.monadic();
      if (ma.tag() != mb.tag() || ma.cost() != mb.cost() || ma.size() != mb.size()) return false;
      if (ma.is_timeout() || mb.is_timeout()) return ma.is_timeout() && mb.is_timeout();
      // Match entries by value and weight; distances must be pointwise ordered.
      std::vector<bool> used(mb.size(), false);
      for (const auto& [_, ea] : ma.entries()) {
        bool found = false;
        std::size_t j = 0;
        for (auto ib = mb.entries().begin(); ib != mb.entries().end(); ++ib, ++j) {
          const auto& eb = ib->second;
          if (used[j] || key(ea.payload.first) != key(eb.payload.first) || ea.weight != eb.weight) continue;
          if (dist_leq(ea.payload.second, eb.payload.second)) {
            used[j] = found = true;
            break;
          }
        }
        if (!found) return false;
      }
      return true;
    }
  }
  return false;
}

namespace {

DistVal parse_dist(detail::TermParser& p, const DistTy& shape);

std::pair<Value, DistVal> parse_dist_payload(detail::TermParser& p, const DistTy& shape) {
  p.expect_symbol("(");
  Value v = p.operand();
  p.expect_symbol(",");
  DistVal d = parse_dist(p, shape);
  p.expect_symbol(")");
  return {std::move(v), std::move(d)};
}

DistVal parse_dist(detail::TermParser& p, const DistTy& shape) {
  switch (shape.kind()) {
    case DistTy::Kind::Unit:
      p.expect_symbol("(");
      p.expect_symbol(")");
      return DistVal::unit();
    case DistTy::Kind::Base: {
      detail::Token t = p.next();
      std::optional<Extended> e;
      if (t.kind == detail::Tok::Number || (t.kind == detail::Tok::Ident && t.text == "inf")) e = Extended::parse(t.text);
      if (!e) throw SyntaxError(t.at, "expected a distance, got '" + t.text + "'");
      try {
        return DistVal::base(*e);
      } catch (const Error& err) {
        throw SyntaxError(t.at, err.what());
      }
    }
    case DistTy::Kind::Pair: {
      p.expect_symbol("(");
      DistVal a = parse_dist(p, shape.left());
      p.expect_symbol(",");
      DistVal b = parse_dist(p, shape.right());
      p.expect_symbol(")");
      return DistVal::pair(std::move(a), std::move(b));
    }
    case DistTy::Kind::Fun:
      p.fail("function distances have no literal syntax");
    case DistTy::Kind::Comp: {
      const DistTy& payload = shape.left();
      return DistVal::comp(detail::parse_monadic<std::pair<Value, DistVal>>(
          p, shape.monad(), [&](detail::TermParser& q) { return parse_dist_payload(q, payload); }));
    }
  }
  p.fail("unknown distance shape");
}

}  // namespace

DistVal parse_distval(const DistTy& shape, std::string_view text, const Signature& sig) {
  detail::TermParser p(detail::tokenize(text), sig);
  DistVal d = parse_dist(p, shape);
  if (!p.at_end()) p.fail("trailing input after distance literal");
  return d;
}

}  // namespace olr
