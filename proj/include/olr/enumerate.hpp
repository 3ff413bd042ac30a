#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "olr/typing.hpp"

namespace olr {

/// Bounded, deterministic enumeration of well-typed terms.
///
/// Depth follows `olr::depth`. Binders are named canonically (`x<k>` for the
/// k-th enclosing binder), so alpha-variants never appear twice. Intermediate
/// types that do not occur in the goal (the argument of a beta-redex, the
/// type of a let-bound computation, the hidden half of a projected pair) are
/// drawn from the ground pool: Unit and every declared base type, plus the
/// types of context variables.
class Enumerator {
 public:
  explicit Enumerator(const Signature& sig);

  /// Closed values of `ty` with depth <= `depth`.
  std::vector<Value> values(const Ty& ty, int depth) const;

  std::vector<Value> values(const Context& ctx, const Ty& ty, int depth) const;
  std::vector<Comp> comps(const Context& ctx, const Ty& ty, int depth) const;

 private:
  using Key = std::tuple<std::string, std::string, int>;

  const std::vector<Value>& values_memo(const Context& ctx, const Ty& ty, int depth) const;
  const std::vector<Comp>& comps_memo(const Context& ctx, const Ty& ty, int depth) const;
  std::vector<Ty> pool(const Context& ctx) const;
  std::string fresh(const Context& ctx) const;

  const Signature& sig_;
  mutable std::map<Key, std::vector<Value>> value_memo_;
  mutable std::map<Key, std::vector<Comp>> comp_memo_;
  mutable std::recursive_mutex mu_;
};

/// Closed values of `ty` up to `depth`. Throws TypeError if a base type in
/// `ty` has no declared literal set.
std::vector<Value> enumerate_values(const Signature& sig, const Ty& ty, int depth);

}  // namespace olr
