#pragma once

// Finite strong monads over an arbitrary payload type.
//
// A payload type P must provide `std::string payload_key(const P&)`, found by
// argument-dependent lookup; two payloads with equal keys are the same element
// (for values this is alpha-equivalence).

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "olr/error.hpp"
#include "olr/rational.hpp"

namespace olr {

enum class MonadTag { Identity, Partial, Powerset, Dist, Cost };

std::string_view to_string(MonadTag tag);
std::optional<MonadTag> parse_monad_tag(std::string_view name);
inline constexpr MonadTag kAllMonads[] = {MonadTag::Identity, MonadTag::Partial, MonadTag::Powerset,
                                          MonadTag::Dist, MonadTag::Cost};

template <class A, class B>
std::string payload_key(const std::pair<A, B>& p) {
  return "<" + payload_key(p.first) + "|" + payload_key(p.second) + ">";
}

/// An element of T(P) for one of the supported monads.
///
/// Representation shared by all tags: a map from payload key to (payload,
/// weight). Identity, Cost and Partial(Some) hold exactly one entry;
/// Partial(Timeout) holds none; Powerset holds any number with weight 1;
/// Dist holds positive weights summing to exactly 1. Cost additionally
/// carries the accumulated nonnegative cost.
template <class P>
class Monadic {
 public:
  struct Entry {
    P payload;
    Rational weight;
  };
  using Entries = std::map<std::string, Entry>;

  static Monadic unit(MonadTag tag, P p) {
    Monadic m(tag);
    m.put(std::move(p), Rational(1));
    return m;
  }

  static Monadic timeout() { return Monadic(MonadTag::Partial); }

  static Monadic set(std::vector<P> elems) {
    Monadic m(MonadTag::Powerset);
    for (auto& e : elems) {
      std::string k = payload_key(e);
      m.entries_.insert_or_assign(std::move(k), Entry{std::move(e), Rational(1)});
    }
    return m;
  }

  /// Throws Error unless all weights are positive and sum to exactly 1.
  static Monadic dist(std::vector<std::pair<P, Rational>> weighted) {
    Monadic m(MonadTag::Dist);
    Rational total(0);
    for (auto& [p, w] : weighted) {
      if (sgn(w) <= 0) throw Error("distribution weight " + to_string(w) + " is not positive");
      total += w;
      m.put(std::move(p), w);
    }
    if (total != 1) throw Error("distribution mass is " + to_string(total) + ", expected 1");
    return m;
  }

  static Monadic with_cost(Rational cost, P p) {
    if (sgn(cost) < 0) throw Error("negative cost " + to_string(cost));
    Monadic m = unit(MonadTag::Cost, std::move(p));
    m.cost_ = std::move(cost);
    return m;
  }

  MonadTag tag() const { return tag_; }
  bool is_timeout() const { return tag_ == MonadTag::Partial && entries_.empty(); }
  const Rational& cost() const { return cost_; }
  const Entries& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  /// The single payload of an Identity, Cost or Partial(Some) element.
  const P& only() const {
    if (entries_.size() != 1) throw Error("monadic element does not hold exactly one payload");
    return entries_.begin()->second.payload;
  }

  std::vector<P> support() const {
    std::vector<P> out;
    out.reserve(entries_.size());
    for (const auto& [_, e] : entries_) out.push_back(e.payload);
    return out;
  }

  /// Weight of the element with the given key (0 when absent).
  Rational weight(const std::string& k) const {
    auto it = entries_.find(k);
    return it == entries_.end() ? Rational(0) : it->second.weight;
  }

  bool contains(const std::string& k) const { return entries_.contains(k); }

  template <class F>
  auto map(F&& f) const -> Monadic<std::invoke_result_t<F, const P&>> {
    using Q = std::invoke_result_t<F, const P&>;
    Monadic<Q> out(tag_);
    out.cost_ = cost_;
    for (const auto& [_, e] : entries_) out.put(f(e.payload), e.weight);
    return out;
  }

  /// Strong Kleisli extension; `k` must return elements of the same monad.
  template <class F>
  auto bind(F&& k) const -> std::invoke_result_t<F, const P&> {
    using R = std::invoke_result_t<F, const P&>;
    R out(tag_);
    out.cost_ = cost_;
    for (const auto& [_, e] : entries_) {
      R r = k(e.payload);
      if (r.tag_ != tag_) throw Error("bind continuation returned a different monad");
      switch (tag_) {
        case MonadTag::Identity:
        case MonadTag::Partial:
          return r;
        case MonadTag::Cost:
          r.cost_ += cost_;
          return r;
        case MonadTag::Powerset:
          for (auto& [__, re] : r.entries_) out.put(re.payload, Rational(1));
          break;
        case MonadTag::Dist:
          for (auto& [__, re] : r.entries_) out.put(re.payload, e.weight * re.weight);
          break;
      }
    }
    return out;
  }

  friend bool operator==(const Monadic& a, const Monadic& b) {
    if (a.tag_ != b.tag_ || a.cost_ != b.cost_ || a.entries_.size() != b.entries_.size()) return false;
    for (auto ia = a.entries_.begin(), ib = b.entries_.begin(); ia != a.entries_.end(); ++ia, ++ib)
      if (ia->first != ib->first || ia->second.weight != ib->second.weight) return false;
    return true;
  }

  std::string key() const {
    std::string k = std::string(to_string(tag_)) + "[";
    if (tag_ == MonadTag::Cost) k += to_string(cost_) + ";";
    for (const auto& [pk, e] : entries_) {
      k += pk;
      if (tag_ == MonadTag::Dist) k += "@" + to_string(e.weight);
      k += ",";
    }
    return k + "]";
  }

 private:
  template <class>
  friend class Monadic;

  explicit Monadic(MonadTag tag) : tag_(tag) {}

  // Accumulates weight: Dist sums, everything else keeps a single copy.
  void put(P p, const Rational& w) {
    std::string k = payload_key(p);
    auto it = entries_.find(k);
    if (it == entries_.end()) {
      entries_.emplace(std::move(k), Entry{std::move(p), tag_ == MonadTag::Dist ? w : Rational(1)});
    } else if (tag_ == MonadTag::Dist) {
      it->second.weight += w;
    }
  }

  MonadTag tag_;
  Rational cost_{0};
  Entries entries_;
};

template <class P>
std::string payload_key(const Monadic<P>& m) {
  return m.key();
}

}  // namespace olr
