#pragma once

// Exact transport feasibility: does a coupling of two finite distributions
// exist whose support lies inside a given relation?

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "olr/rational.hpp"

namespace olr {

struct TransportInstance {
  std::map<std::string, Rational> mu;
  std::map<std::string, Rational> nu;
  std::set<std::pair<std::string, std::string>> support;
};

/// Joint mass on (a, b) pairs; only nonzero entries are stored.
using Coupling = std::map<std::pair<std::string, std::string>, Rational>;

/// Throws Error unless mu and nu have positive weights summing to exactly 1.
/// Support pairs that mention an element outside mu or nu are allowed and
/// simply never carry mass.
void validate(const TransportInstance& inst);

/// A coupling of mu and nu supported inside `support`, or nullopt if none
/// exists. Solved as an exact max-flow (Edmonds-Karp): source -> a with
/// capacity mu(a), a -> b for each support pair, b -> sink with capacity
/// nu(b); feasible iff the max flow is 1.
std::optional<Coupling> transport_feasible(const TransportInstance& inst);

/// True iff `c` has marginals mu and nu and lives inside the support.
bool is_coupling(const TransportInstance& inst, const Coupling& c);

}  // namespace olr
