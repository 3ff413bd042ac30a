#pragma once

// Logical relations over finite carriers of closed values: Barr liftings of
// the supported monads, the type-indexed relation, and the executable
// fundamental lemma.

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "olr/enumerate.hpp"
#include "olr/eval.hpp"
#include "olr/feasibility.hpp"

namespace olr {

using KeyPair = std::pair<std::string, std::string>;

/// A finite binary relation between two carriers of closed values. Pairs are
/// stored by alpha-invariant key.
struct Rel {
  std::vector<Value> left;
  std::vector<Value> right;
  std::set<KeyPair> pairs;

  bool holds(const Value& a, const Value& b) const { return pairs.contains({key(a), key(b)}); }

  static Rel total(std::vector<Value> left, std::vector<Value> right);
  static Rel diagonal(const std::vector<Value>& carrier);

  friend bool operator==(const Rel& a, const Rel& b) { return a.pairs == b.pairs; }
};

/// Barr lifting of a relation given by a membership predicate on payloads.
///
///   Identity  R itself
///   Partial   timeout ~ timeout; some a ~ some b iff a R b
///   Powerset  C = R restricted to m x n must project onto m and onto n
///   Dist      a coupling supported in R exists (exact max-flow)
///   Cost      equal costs and related payloads
///
/// Throws Error if the two elements belong to different monads.
template <class P, class Q, class Pred>
bool barr_holds(const Monadic<P>& m, const Monadic<Q>& n, Pred&& related) {
  if (m.tag() != n.tag()) throw Error("lifting elements of different monads");
  switch (m.tag()) {
    case MonadTag::Identity:
      return related(m.only(), n.only());
    case MonadTag::Cost:
      return m.cost() == n.cost() && related(m.only(), n.only());
    case MonadTag::Partial:
      if (m.is_timeout() || n.is_timeout()) return m.is_timeout() && n.is_timeout();
      return related(m.only(), n.only());
    case MonadTag::Powerset: {
      // The largest candidate C decides existence: any C inside R and m x n
      // has projections contained in those of C_max.
      std::set<std::string> hit_left, hit_right;
      for (const auto& [ka, ea] : m.entries())
        for (const auto& [kb, eb] : n.entries())
          if (related(ea.payload, eb.payload)) {
            hit_left.insert(ka);
            hit_right.insert(kb);
          }
      return hit_left.size() == m.size() && hit_right.size() == n.size();
    }
    case MonadTag::Dist: {
      TransportInstance inst;
      for (const auto& [ka, ea] : m.entries()) inst.mu.emplace(ka, ea.weight);
      for (const auto& [kb, eb] : n.entries()) inst.nu.emplace(kb, eb.weight);
      for (const auto& [ka, ea] : m.entries())
        for (const auto& [kb, eb] : n.entries())
          if (related(ea.payload, eb.payload)) inst.support.emplace(ka, kb);
      return transport_feasible(inst).has_value();
    }
  }
  return false;
}

/// The lifted relation T^R as a membership procedure.
class MRel {
 public:
  MRel(MonadTag tag, Rel r) : tag_(tag), rel_(std::move(r)) {}

  /// Throws Error if either element is not of the lifted monad.
  bool contains(const MVal& m, const MVal& n) const;
  MonadTag tag() const { return tag_; }
  const Rel& base() const { return rel_; }

 private:
  MonadTag tag_;
  Rel rel_;
};

MRel barr_lift(MonadTag tag, Rel r);

/// Relation assigned to one base type, on literal names.
struct BaseRel {
  enum class Kind { Identity, Total, Pairs };
  Kind kind = Kind::Identity;
  std::set<KeyPair> pairs;  // literal pairs, for Kind::Pairs

  bool holds(const std::string& a, const std::string& b) const;
};

/// Base relations by base-type name; a base without an entry is an error.
struct RelAssignment {
  std::map<std::string, BaseRel> bases;

  static RelAssignment identity(const Signature& sig);
};

/// One failed case of a relational check.
struct CaseFailure {
  Bindings left;
  Bindings right;
  std::string witness;
};

/// Result of checking one declaration.
struct CheckReport {
  std::string name;
  std::string term;
  std::string context;
  std::string type;
  std::string level;  // observer level, noninterference only
  MonadTag monad = MonadTag::Identity;
  int depth = 0;
  long cases = 0;
  std::vector<CaseFailure> failures;
  std::vector<std::string> stability_violations;
  std::vector<std::string> notes;

  bool passed() const { return failures.empty() && stability_violations.empty(); }
};

/// The type-indexed relation, computed lazily and memoized per (type, pair).
///
///   Unit        all pairs
///   Base        the assigned relation
///   A * B       componentwise
///   A -> C B    related arguments give related applications
///   C A         evaluations related by the lifting
///
/// The arrow clause quantifies over the enumerated carrier of the domain at
/// the engine's depth, so verification holds up to that bound.
class LogicalRelation {
 public:
  /// Relation on evaluated results at a computation type. Defaults to the
  /// Barr lifting of the value relation.
  using CompLift = std::function<bool(const LogicalRelation&, const Ty&, const MVal&, const MVal&)>;

  LogicalRelation(const Evaluator& ev, const Enumerator& en, RelAssignment assign, int depth,
                  CompLift lift = {});

  bool related(const Ty& ty, const Value& v, const Value& w) const;
  bool related_comp(const Ty& ty, const Comp& t, const Comp& s) const;
  bool related_mval(const Ty& ty, const MVal& m, const MVal& n) const;

  /// Enumerated closed values of `ty` at the engine depth.
  const std::vector<Value>& carrier(const Ty& ty) const;
  /// The relation at `ty`, materialized over the carrier.
  Rel materialize(const Ty& ty) const;

  const Evaluator& evaluator() const { return ev_; }
  int depth() const { return depth_; }

 private:
  const Evaluator& ev_;
  const Enumerator& en_;
  RelAssignment assign_;
  int depth_;
  CompLift lift_;
  mutable std::map<std::string, bool> memo_;
  mutable std::map<std::string, std::vector<Value>> carriers_;
  mutable std::recursive_mutex mu_;
};

/// Stability: constants are self-related and every declared effect's
/// interpretation is related to itself by the lifting. Returns violations.
std::vector<std::string> stability_violations(const LogicalRelation& lr);

/// All pairs of substitutions for `ctx` whose components are related,
/// drawn from the enumerated carriers; calls `visit(left, right)`.
void for_each_related_subst(const LogicalRelation& lr, const Context& ctx,
                            const std::function<void(const Bindings&, const Bindings&)>& visit);

/// Executable fundamental lemma: every related pair of substitutions sends
/// the term to related results. Stability is checked first; on a violation
/// the cases are not run.
CheckReport check_fundamental(const LogicalRelation& lr, const Context& ctx, const Term& t);

/// Shared report header for a term under a context.
CheckReport make_report(const Evaluator& ev, const Context& ctx, const Term& t, int depth);

std::string describe(const Bindings& b);

}  // namespace olr
