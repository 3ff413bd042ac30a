#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "olr/effects.hpp"
#include "olr/subst.hpp"

namespace olr {

struct EvalConfig {
  MonadTag monad = MonadTag::Identity;
  EffectInterp interp;
  int fuel = 10000;
};

/// Monadic big-step evaluation of closed computations.
///
///   [[return v]]          = unit(v)
///   [[(\x.t) v]]          = [[t[v/x]]]
///   [[let x = t in s]]    = bind([[t]], a -> [[s[a/x]]])
///   [[fst (v1, v2)]]      = unit(v1)          (snd likewise)
///   [[op]]                = interpretation of op
///
/// Fuel bounds the nesting of beta and let steps along one evaluation path.
/// Running out yields `timeout` in the partial monad and throws FuelExhausted
/// in every other monad.
class Evaluator {
 public:
  Evaluator(const Signature& sig, EvalConfig cfg);

  MVal eval(const Comp& t) const;
  MVal eval(const Comp& t, int fuel) const;

  const EvalConfig& config() const { return cfg_; }
  const Signature& signature() const { return sig_; }
  MonadTag monad() const { return cfg_.monad; }

 private:
  MVal run(const Comp& t, int fuel) const;

  const Signature& sig_;
  EvalConfig cfg_;
  mutable std::map<std::string, MVal> memo_;  // closed computation key -> result at full fuel
  mutable std::mutex mu_;
};

/// The projection interaction arrows on closed pair values.
Value project(const Value& pair, bool first);

}  // namespace olr
