#pragma once

// Differential relations <carrier, distance carrier, delta> in Set, the
// coupling-based lifting of a monad, and reindexing.

#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "olr/distance.hpp"
#include "olr/effects.hpp"
#include "olr/feasibility.hpp"

namespace olr {

template <class X>
struct Gds {
  std::vector<X> carrier;
  std::vector<DistVal> dist_carrier;
  std::function<bool(const X&, const DistVal&, const X&)> delta;
};

/// Coupling-based lifting: (x, dv, y) is related iff some phi in T(delta)
/// projects to x on the first component, to dv on the first two, and to y on
/// the third.
///
///   Identity  dv = (x, w) and delta(x, w, y)
///   Partial   all three timeout, or the identity case under some(.)
///   Powerset  first projection of dv is x; phi_max = {(a, w, b) in delta :
///             (a, w) in dv, b in y} projects onto dv and onto y
///   Dist      the X-marginal of dv is x; a coupling of dv and y supported
///             in {((a, w), b) : delta(a, w, b)} exists
///   Cost      equal costs on all three and the identity case on payloads
///
/// A marginal mismatch between x and dv is a failure of existence, not a
/// malformed input: the result is false and `why` explains. Throws Error if
/// the three elements are of different monads.
template <class Delta>
bool diff_holds(const MVal& x, const DMVal& dv, const MVal& y, Delta&& delta, std::string* why = nullptr) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (x.tag() != dv.tag() || x.tag() != y.tag()) throw Error("differential lifting across different monads");
  auto single = [&]() {
    const auto& [a, w] = dv.only();
    if (key(a) != key(x.only())) return fail("distance is anchored at " + to_string(a) + ", not " + to_string(x.only()));
    return delta(x.only(), w, y.only());
  };
  switch (x.tag()) {
    case MonadTag::Identity:
      return single();
    case MonadTag::Partial:
      if (x.is_timeout() || dv.is_timeout() || y.is_timeout()) {
        if (x.is_timeout() && dv.is_timeout() && y.is_timeout()) return true;
        return fail("timeout is related only to timeout");
      }
      return single();
    case MonadTag::Cost:
      if (x.cost() != dv.cost() || x.cost() != y.cost()) return fail("costs differ");
      return single();
    case MonadTag::Powerset: {
      std::set<std::string> anchors;
      for (const auto& [_, e] : dv.entries()) anchors.insert(key(e.payload.first));
      std::set<std::string> xs;
      for (const auto& [k, _] : x.entries()) xs.insert(k);
      if (anchors != xs) return fail("first projection of the distance differs from the left set");
      std::set<std::string> hit_dv, hit_y;
      for (const auto& [kd, ed] : dv.entries())
        for (const auto& [ky, ey] : y.entries())
          if (delta(ed.payload.first, ed.payload.second, ey.payload)) {
            hit_dv.insert(kd);
            hit_y.insert(ky);
          }
      return hit_dv.size() == dv.size() && hit_y.size() == y.size();
    }
    case MonadTag::Dist: {
      std::map<std::string, Rational> marginal;
      for (const auto& [_, e] : dv.entries()) marginal[key(e.payload.first)] += e.weight;
      std::map<std::string, Rational> xs;
      for (const auto& [k, e] : x.entries()) xs.emplace(k, e.weight);
      if (marginal != xs) return fail("first marginal of the distance differs from the left distribution");
      TransportInstance inst;
      for (const auto& [kd, ed] : dv.entries()) inst.mu.emplace(kd, ed.weight);
      for (const auto& [ky, ey] : y.entries()) inst.nu.emplace(ky, ey.weight);
      for (const auto& [kd, ed] : dv.entries())
        for (const auto& [ky, ey] : y.entries())
          if (delta(ed.payload.first, ed.payload.second, ey.payload)) inst.support.emplace(kd, ky);
      return transport_feasible(inst).has_value();
    }
  }
  return false;
}

/// The lifted object. Its carriers are left empty: monadic elements over an
/// enumerated carrier are not enumerated, membership is decided directly.
Gds<MVal> diff_lift(const Gds<Value>& g);

/// Cartesian lifting along u: delta'(a, v, a') iff delta(u a, v, u a').
/// The distance carrier is unchanged.
template <class A, class B>
Gds<A> reindex_dlr(std::function<B(const A&)> u, std::vector<A> carrier, const Gds<B>& g) {
  Gds<A> out;
  out.carrier = std::move(carrier);
  out.dist_carrier = g.dist_carrier;
  out.delta = [u = std::move(u), delta = g.delta](const A& a, const DistVal& v, const A& b) {
    return delta(u(a), v, u(b));
  };
  return out;
}

}  // namespace olr
