#pragma once

// Monadic values over closed terms, their literal syntax, and generic-effect
// interpretations.
//
// Literal syntax per monad:
//   identity   v
//   partial    some(v) | timeout
//   powerset   {v1, v2, ...}
//   dist       {v1: 1/2, v2: 1/2}
//   cost       cost(3/2, v)

#include <map>
#include <string>
#include <string_view>

#include "olr/monad.hpp"
#include "olr/typing.hpp"

namespace olr {

using MVal = Monadic<Value>;

MVal m_unit(MonadTag tag, const Value& v);

template <class F>
MVal m_bind(const MVal& m, F&& k) {
  return m.bind(std::forward<F>(k));
}

std::string to_literal(const MVal& m);
MVal parse_mval(MonadTag tag, std::string_view text, const Signature& sig);

/// Effect name -> its interpretation in the active monad.
struct EffectInterp {
  MonadTag tag = MonadTag::Identity;
  std::map<std::string, MVal> effects;
};

/// Looks up the interpretation of `name`. Throws EvalError if the effect is
/// undeclared, has no interpretation, or was interpreted in another monad.
const MVal& interpret_effect(MonadTag tag, const EffectInterp& interp, const Signature& sig,
                             const std::string& name);

/// Checks every payload typechecks at the declared result type.
void validate_interp(const EffectInterp& interp, const Signature& sig);

}  // namespace olr
