#pragma once

// Executable coherence laws of an operational structure in Set: each law
// compares the two paths of one commuting diagram, evaluated on a witness.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "olr/enumerate.hpp"
#include "olr/eval.hpp"

namespace olr {

enum class Law {
  Return,          // ev . S(return v) = unit . S(v)
  Effect,          // ev . S(op) = interpretation
  Application,     // ev . S(v w) = ev . app . <S v, S w>
  Sequencing,      // ev . S(let) = bind(ev . S s) . (id x ev) . <id, S t>
  Projection,      // ev . S(fst v) = unit . p1 . S v
  LambdaTriangle,  // S t = app . (S(\x.t) x id)
  PairTriangle,    // S v_i = p_i . S(v1, v2)
  UnitTriangle,    // S () = unit-arrow . !
  ConstTriangle,   // S c = const-arrow . !
};

std::string_view to_string(Law law);

struct CoherenceResult {
  Law law;
  bool pass = false;
  std::string witness;
  std::string left_path;
  std::string right_path;
};

/// Laws whose diagram applies to the head constructor of `t`.
std::vector<Law> applicable_laws(const Term& t);

/// Checks one law on `t` under the closing substitution `env`. The lambda
/// triangle needs an argument value `arg`. Throws Error if the witness does
/// not have the shape the law requires.
CoherenceResult check_coherence(const Evaluator& ev, Law law, const Term& t, const Bindings& env = {},
                                const std::optional<Value>& arg = std::nullopt);

/// Every applicable law on `t` under `env`; lambda triangles are checked
/// against every enumerated argument of the binder type up to `depth`.
std::vector<CoherenceResult> check_all_laws(const Evaluator& ev, const Enumerator& en, const Term& t,
                                            const Bindings& env, int depth);

}  // namespace olr
