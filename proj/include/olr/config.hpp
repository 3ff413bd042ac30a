#pragma once

// Run configuration, read from JSON:
//
//   {
//     "monad": "dist", "depth": 2, "fuel": 10000,
//     "bases": {
//       "Bool": {"literals": ["true", "false"], "relation": "identity",
//                "distance": {"kind": "discrete", "self": "0"}},
//       "Real": {"literals": ["0", "1/2", "1"], "distance": {"kind": "metric"}}
//     },
//     "effects": {
//       "coin": {"dist": "{true: 1/2, false: 1/2}", "powerset": "{true, false}",
//                "witness": {"dist": "{(true, 0): 1/2, (false, 0): 1/2}"}}
//     },
//     "grid": {"dfun_limit": 64, "search_limit": 200000},
//     "noninterference": {"levels": ["private", "public"], "order": [["private", "public"]],
//                         "hidden": ["private"], "labels": {"h": "private"},
//                         "check_monotonicity": false}
//   }
//
// A relation is "identity", "total", or a list of literal pairs. A distance
// kind is "metric", "discrete", or "table" with "table": [[a, b, "d"], ...].

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "olr/dlr.hpp"
#include "olr/infoflow.hpp"
#include "olr/logrel.hpp"
#include "olr/parser.hpp"

namespace olr {

struct RunConfig {
  MonadTag monad = MonadTag::Identity;
  int depth = 2;
  int fuel = 10000;
  Signature bases;  // base types only; programs add their effects
  std::map<std::string, BaseRel> relations;
  std::map<std::string, BaseDistance> distances;
  /// Effect name -> monad -> literal text.
  std::map<std::string, std::map<MonadTag, std::string>> effects;
  std::map<std::string, std::map<MonadTag, std::string>> witnesses;
  DlrLimits limits;
  FlowPolicy policy;
};

/// Bool with identity relation and discrete distance, coin and unit-free
/// interpretations for every monad.
RunConfig default_config();

/// Throws ConfigError with a description of the offending entry.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

/// Everything needed to run one program under a configuration.
struct Session {
  Signature sig;
  EffectInterp interp;
  RelAssignment relations;
  DlrAssignment distances;
};

/// Merges the program's effect declarations into the configured bases and
/// resolves interpretations and witnesses for the configured monad. Throws
/// ConfigError when an interpretation fails to parse or typecheck.
Session make_session(const RunConfig& cfg, const std::vector<EffectDecl>& effects);

}  // namespace olr
