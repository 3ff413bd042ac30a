#pragma once

// Surface syntax:
//
//   effect coin : Bool
//   val id = \x:Bool. return x
//   val leak (h:Bool) = return h
//
// Values      x | lit | () | \x:T. t | (v, w)
// Computations return v | v w | fst v | snd v | let x = t in s | op#name
// Types       Unit | Base | T * T | T -> T      (-> right-assoc, * tighter)
//
// Comments run from `--` to end of line. Literals are resolved against the
// base types of the signature passed to the parser; an identifier naming an
// earlier closed value declaration is replaced by that value.

#include <string>
#include <string_view>
#include <vector>

#include "olr/typing.hpp"

namespace olr {

/// A named declaration: `val name (params) = body`.
struct Decl {
  std::string name;
  Context params;
  Term body;
  Span at;
};

struct Program {
  std::vector<EffectDecl> effects;
  std::vector<Decl> decls;
};

Program parse_program(std::string_view source, const Signature& sig);

Ty parse_type(std::string_view text);

/// Parses a closed value, resolving literals against `sig`.
Value parse_value(std::string_view text, const Signature& sig);

}  // namespace olr
