#pragma once

// Differential logical relations over finite carriers and distance grids:
// the type-indexed ternary relation, derivative synthesis, the executable
// differential fundamental lemma, and distance-witness search.

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "olr/enumerate.hpp"
#include "olr/eval.hpp"
#include "olr/gds.hpp"
#include "olr/logrel.hpp"

namespace olr {

/// Distance on one base type. Metric literals must be rationals and use
/// |x - y|; discrete uses 0 on equal literals and 1 otherwise; a table gives
/// the distance per literal pair, missing pairs being at inf.
struct BaseDistance {
  enum class Kind { Metric, Discrete, Table };
  Kind kind = Kind::Discrete;
  std::map<KeyPair, Extended> table;
  Extended self{Rational(0)};  // distance of a constant to itself

  Extended distance(const std::string& a, const std::string& b) const;
  /// delta(a, v, b) iff v = inf or distance(a, b) <= v.
  bool holds(const std::string& a, const Extended& v, const std::string& b) const;
};

struct DlrAssignment {
  std::map<std::string, BaseDistance> bases;
  /// Differential witness per effect, a monadic distance in the active monad.
  /// Effects without one use fmap(a -> (a, self distance of a)).
  std::map<std::string, DistVal> effect_witness;

  static DlrAssignment discrete(const Signature& sig);
};

DistTy dsp_of(const DlrAssignment& assign, MonadTag tag, const Ty& ty);
DistTy dsp_of_comp(const DlrAssignment& assign, MonadTag tag, const Ty& ty);

struct DlrLimits {
  /// Function-distance grids list every tabulated map when there are at most
  /// this many (identity monad only); otherwise the derivatives of the
  /// carrier's closed functions.
  long dfun_limit = 64;
  /// Upper bound on candidates tried by distance_search.
  long search_limit = 200000;
};

using DistEnv = std::map<std::string, DistVal>;

class DlrEngine {
 public:
  DlrEngine(const Evaluator& ev, const Enumerator& en, DlrAssignment assign, int depth, DlrLimits limits = {});

  DistTy dsp(const Ty& ty) const { return dsp_of(assign_, ev_.monad(), ty); }
  DistTy dsp_comp(const Ty& ty) const { return dsp_of_comp(assign_, ev_.monad(), ty); }

  const std::vector<Value>& carrier(const Ty& ty) const;
  /// The finite distance grid at `ty`, in ascending declared order.
  const std::vector<DistVal>& grid(const Ty& ty) const;

  /// The ternary relation at a value type.
  ///
  ///   Unit      everything
  ///   Base      the base distance clause
  ///   A * B     both components
  ///   A -> B    for every (a, da, b) in delta_A over the grids,
  ///             delta_CB(f a, df(a, da), g b)
  bool delta(const Ty& ty, const Value& v, const DistVal& dv, const Value& w) const;
  /// The coupling-based lifting at C ty, on evaluated results.
  bool delta_comp(const Ty& ty, const MVal& x, const DistVal& dv, const MVal& y, std::string* why = nullptr) const;

  Gds<Value> gds(const Ty& ty) const;

  /// Left-biased derivative synthesis of an open term, given the left
  /// environment and the environment distances.
  DistVal derive(const Term& t, const Bindings& rho, const DistEnv& drho) const;
  DistVal derive_value(const Value& v, const Bindings& rho, const DistEnv& drho) const;
  DistVal derive_comp(const Comp& t, const Bindings& rho, const DistEnv& drho) const;

  /// Derivative of a closed value in the empty environment.
  DistVal self_distance(const Value& v) const { return derive_value(v, {}, {}); }
  DistVal effect_witness(const std::string& name) const;

  /// Constants at their self distance and effects at their witness must be
  /// related to themselves.
  std::vector<std::string> stability_violations() const;

  /// Every (rho1, drho, rho2) with delta at each context entry.
  void for_each_triple(const Context& ctx,
                       const std::function<void(const Bindings&, const DistEnv&, const Bindings&)>& visit) const;

  CheckReport check_fundamental(const Context& ctx, const Term& t) const;

  struct Search {
    std::optional<DistVal> witness;
    long searched = 0;
  };
  /// Searches distances fmap(a -> (a, w(a))) of the left result, with w
  /// ranging over the grid, and returns a minimal one relating t and s.
  Search distance_search(const Ty& ty, const Comp& t, const Comp& s) const;

  const Evaluator& evaluator() const { return ev_; }
  const DlrAssignment& assignment() const { return assign_; }
  int depth() const { return depth_; }

 private:
  std::vector<DistVal> build_grid(const Ty& ty) const;
  DistVal derive_lambda(const Value& lam, const Bindings& rho, const DistEnv& drho) const;

  const Evaluator& ev_;
  const Enumerator& en_;
  DlrAssignment assign_;
  int depth_;
  DlrLimits limits_;
  mutable std::map<std::string, std::vector<Value>> carriers_;
  mutable std::map<std::string, std::vector<DistVal>> grids_;
  mutable std::map<std::string, bool> memo_;
  mutable std::recursive_mutex mu_;
};

}  // namespace olr
