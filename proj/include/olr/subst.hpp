#pragma once

#include <map>
#include <string>

#include "olr/typing.hpp"

namespace olr {

/// Variable name -> closed value.
using Bindings = std::map<std::string, Value>;

/// Simultaneous substitution of closed values for free variables. Bound
/// occurrences are left alone. Since every bound value is closed, no capture
/// can occur. Throws SubstError if a bound value is not closed.
Value substitute(const Value& v, const Bindings& b);
Comp substitute(const Comp& t, const Bindings& b);
Term substitute(const Term& t, const Bindings& b);

/// Checked variant: the bindings must cover exactly the free variables of the
/// term, and each bound value must typecheck at its context type.
Term substitute_checked(const Signature& sig, const Context& ctx, const Term& t, const Bindings& b);

/// t[v/x] for a closed v, without re-checking closedness.
Comp instantiate(const Comp& t, const std::string& x, const Value& closed);

/// The `app` interaction arrow: app(\x.t, v) = t[v/x].
Comp apply_lambda(const Value& lam, const Value& arg);

}  // namespace olr
