#include "olr/gds.hpp"

namespace olr {

Gds<MVal> diff_lift(const Gds<Value>& g) {
  Gds<MVal> out;
  out.delta = [delta = g.delta](const MVal& x, const DistVal& dv, const MVal& y) {
    if (!dv.is(DistVal::Kind::Comp)) return false;
    return diff_holds(x, dv.monadic(), y, delta);
  };
  return out;
}

}  // namespace olr
