#pragma once

// Level-indexed relations for information flow, the masking lifting, and a
// noninterference check built on the logical relation.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "olr/logrel.hpp"

namespace olr {

/// A finite poset of security levels. Levels in `hidden` are invisible to
/// observers: the masking lifting makes their relations total.
class SecurityLattice {
 public:
  /// `order` lists generating pairs (lo, hi) meaning lo <= hi; the reflexive
  /// transitive closure is taken. Throws ConfigError on unknown levels or a
  /// cycle between distinct levels.
  SecurityLattice(std::vector<std::string> levels, const std::vector<std::pair<std::string, std::string>>& order,
                  std::set<std::string> hidden);

  /// The two-point lattice private <= public with private hidden.
  static SecurityLattice two_point();

  const std::vector<std::string>& levels() const { return levels_; }
  bool leq(const std::string& a, const std::string& b) const { return leq_.contains({a, b}); }
  bool hidden(const std::string& level) const { return hidden_.contains(level); }
  bool has(const std::string& level) const;

 private:
  std::vector<std::string> levels_;
  std::set<std::pair<std::string, std::string>> leq_;
  std::set<std::string> hidden_;
};

/// One relation per level over a shared carrier.
struct IndexedRel {
  std::map<std::string, Rel> at;

  friend bool operator==(const IndexedRel& a, const IndexedRel& b) { return a.at == b.at; }
};

/// Hidden levels become total on their carrier, visible levels are unchanged.
IndexedRel mask_lift(const SecurityLattice& lattice, const IndexedRel& ir);

/// Pairs (lo, hi) with lo <= hi where R(lo) is not contained in R(hi).
std::vector<std::pair<std::string, std::string>> monotonicity_violations(const SecurityLattice& lattice,
                                                                        const IndexedRel& ir);

struct FlowPolicy {
  SecurityLattice lattice = SecurityLattice::two_point();
  std::map<std::string, std::string> labels;  // variable -> level; unlabeled variables are unmasked
  bool check_monotonicity = false;
};

/// The family of a context variable: the logical relation at its type,
/// constant across levels.
IndexedRel variable_family(const SecurityLattice& lattice, const LogicalRelation& lr, const Ty& ty);

/// For every observer level: inputs range over pairs related by the masked
/// family of each variable at that variable's own level, and results must be
/// related by the masked computation relation at the observer's level. One
/// report per level, in lattice order.
std::vector<CheckReport> check_noninterference(const Evaluator& ev, const Enumerator& en, const RelAssignment& assign,
                                               const FlowPolicy& policy, const Context& ctx, const Term& t,
                                               int depth);

}  // namespace olr
