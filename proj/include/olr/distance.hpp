#pragma once

// Distance shapes and distance values for differential relations.
//
//   dsp(Unit)     = unit
//   dsp(B)        = nonnegative rationals with inf
//   dsp(A * B)    = dsp(A) x dsp(B)
//   dsp(A -> B)   = (Val A x dsp A) -> dsp(C B)
//   dsp(C A)      = T(Val A x dsp A)

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "olr/monad.hpp"
#include "olr/typing.hpp"

namespace olr {

class DistTy {
 public:
  enum class Kind { Unit, Base, Pair, Fun, Comp };

  static DistTy unit();
  static DistTy base(std::string name);
  static DistTy pair(DistTy first, DistTy second);
  /// Distances on functions from `domain` values.
  static DistTy fun(Ty domain, DistTy domain_dist, DistTy codomain);
  static DistTy comp(MonadTag tag, DistTy payload);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  const std::string& name() const;  // Base
  const Ty& domain() const;         // Fun
  MonadTag monad() const;           // Comp
  const DistTy& left() const;       // Pair first, Fun domain distance, Comp payload
  const DistTy& right() const;      // Pair second, Fun codomain

  std::string str() const;
  friend bool operator==(const DistTy& a, const DistTy& b) { return a.str() == b.str(); }

 private:
  struct Node;
  explicit DistTy(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class DistVal;

/// Monadic distance: T(Val x dsp).
using DMVal = Monadic<std::pair<Value, DistVal>>;

class DistVal {
 public:
  enum class Kind { Unit, Base, Pair, Fun, Comp };
  /// (argument, argument distance) -> result distance.
  using Fn = std::function<DistVal(const Value&, const DistVal&)>;
  /// Tabulation keyed by `key(argument) + "|" + distance.key()`.
  using Table = std::map<std::string, std::pair<std::pair<Value, DistVal>, DistVal>>;

  static DistVal unit();
  static DistVal base(Extended d);
  static DistVal pair(DistVal first, DistVal second);
  /// Function distances are compared extensionally on their table. The
  /// callable, if any, answers arguments outside the table.
  static DistVal fun(Table table, Fn fallback = {});
  static DistVal comp(DMVal m);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  const Extended& distance() const;  // Base
  const DistVal& first() const;      // Pair
  const DistVal& second() const;     // Pair
  const Table& table() const;        // Fun
  const DMVal& monadic() const;      // Comp

  /// Applies a function distance. Throws Error outside its domain.
  DistVal apply(const Value& arg, const DistVal& darg) const;

  /// Canonical identity; equal keys mean equal distances.
  const std::string& key() const;
  std::string str() const;

  friend bool operator==(const DistVal& a, const DistVal& b) { return a.key() == b.key(); }

 private:
  struct Node;
  explicit DistVal(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

inline std::string payload_key(const DistVal& d) { return d.key(); }

std::string table_key(const Value& arg, const DistVal& darg);

/// Pointwise order: base distances numerically, pairs componentwise,
/// functions entrywise on a shared table, monadic distances when they have
/// the same entries with ordered distances. Unrelated shapes are incomparable.
bool dist_leq(const DistVal& a, const DistVal& b);

/// Literal syntax: `()`, `p/q`, `inf`, `(d1, d2)`, and monadic distances in
/// the value literal syntax with `(v, d)` payloads. Function distances print
/// as `[a, d => r; ...]` and cannot be parsed.
DistVal parse_distval(const DistTy& shape, std::string_view text, const Signature& sig);

}  // namespace olr
