#pragma once

#include <string>

#include "olr/config.hpp"
#include "olr/parser.hpp"

namespace fx {

inline const char* kConfig = R"json({
  "bases": {
    "Bool": {"literals": ["true", "false"], "relation": "identity",
             "distance": {"kind": "discrete"}},
    "Real": {"literals": ["0", "1/2", "1", "3/2", "2"], "relation": "identity",
             "distance": {"kind": "metric"}}
  },
  "effects": {
    "coin": {"identity": "true", "partial": "some(true)", "powerset": "{true, false}",
             "dist": "{true: 1/2, false: 1/2}", "cost": "cost(1, true)"},
    "tick": {"identity": "()", "partial": "some(())", "powerset": "{()}",
             "dist": "{(): 1}", "cost": "cost(1, ())"}
  }
})json";

inline const char* kEffects = "effect coin : Bool\neffect tick : Unit\n";

/// Bool, the five-point Real grid, coin and tick, for one monad.
struct World {
  olr::RunConfig cfg;
  olr::Session s;
  olr::Evaluator ev;
  olr::Enumerator en;

  explicit World(olr::MonadTag tag, int depth = 2)
      : cfg(make_cfg(tag, depth)),
        s(olr::make_session(cfg, olr::parse_program(kEffects, cfg.bases).effects)),
        ev(s.sig, olr::EvalConfig{tag, s.interp, cfg.fuel}),
        en(s.sig) {}

  static olr::RunConfig make_cfg(olr::MonadTag tag, int depth) {
    olr::RunConfig c = olr::parse_config(kConfig);
    c.monad = tag;
    c.depth = depth;
    return c;
  }

  /// The body of `val t <params> = <src>`.
  olr::Term term(const std::string& src, const std::string& params = "") const {
    return decl(src, params).body;
  }
  olr::Comp comp(const std::string& src, const std::string& params = "") const {
    return std::get<olr::Comp>(term(src, params));
  }
  olr::Decl decl(const std::string& src, const std::string& params = "") const {
    return olr::parse_program(std::string(kEffects) + "val t " + params + " = " + src, s.sig).decls.at(0);
  }
  olr::Value val(const std::string& src) const { return olr::parse_value(src, s.sig); }
  olr::MVal mval(const std::string& src) const { return olr::parse_mval(ev.monad(), src, s.sig); }
};

}  // namespace fx
