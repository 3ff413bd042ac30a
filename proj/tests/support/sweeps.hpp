#pragma once

// Exhaustive and sampled agreement sweeps between the library's deciders and
// the brute-force oracles. Shared by the unit tests (small sizes) and the
// acceptance binary (full sizes).

#include <algorithm>
#include <bit>
#include <functional>
#include <optional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "olr/gds.hpp"
#include "olr/logrel.hpp"

namespace sweep {

using olr::Rational;

struct Tally {
  long checked = 0;
  long disagreements = 0;
  std::string first;

  void record(bool agree, const std::function<std::string()>& what) {
    ++checked;
    if (!agree && disagreements++ == 0) first = what();
  }
  bool ok() const { return disagreements == 0 && checked > 0; }
};

/// Opaque payload for lifting sweeps.
struct Idx {
  int i;
};
inline std::string payload_key(const Idx& x) { return std::to_string(x.i); }

using ISet = olr::Monadic<Idx>;

inline std::vector<ISet> all_sets(int n) {
  std::vector<ISet> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    std::vector<Idx> xs;
    for (int i = 0; i < n; ++i)
      if ((m >> i) & 1u) xs.push_back({i});
    out.push_back(ISet::set(xs));
  }
  return out;
}

/// Every relation on carriers up to `max_n` and every pair of subsets: the
/// powerset lifting against `oracle` (the exists-C search or Egli-Milner).
template <class Oracle>
Tally powerset_lifting(int max_n, Oracle&& oracle) {
  Tally t;
  for (int na = 1; na <= max_n; ++na)
    for (int nb = 1; nb <= max_n; ++nb) {
      auto ms = all_sets(na), ns = all_sets(nb);
      for (oracle::RelBits r = 0; r < (1u << (na * nb)); ++r) {
        auto rel = [&](const Idx& a, const Idx& b) { return oracle::rel_has(r, nb, a.i, b.i); };
        for (std::uint32_t m = 0; m < ms.size(); ++m)
          for (std::uint32_t n = 0; n < ns.size(); ++n) {
            bool lib = olr::barr_holds(ms[m], ns[n], rel);
            t.record(lib == oracle(r, na, nb, m, n), [&] {
              return std::to_string(na) + "x" + std::to_string(nb) + " R=" + std::to_string(r) +
                     " m=" + std::to_string(m) + " n=" + std::to_string(n);
            });
          }
      }
    }
  return t;
}

struct TransportTally {
  Tally forest, hall, coupling;
};

/// Every instance with |A|, |B| <= max_n, weights with denominators up to
/// max_den, and every support.
inline TransportTally transport(int max_n, int max_den) {
  TransportTally t;
  for (int na = 1; na <= max_n; ++na)
    for (int nb = 1; nb <= max_n; ++nb) {
      auto mus = oracle::distributions(na, max_den);
      auto nus = oracle::distributions(nb, max_den);
      for (std::uint32_t s = 0; s < (1u << (na * nb)); ++s) {
        std::vector<std::pair<int, int>> sup;
        for (int k = 0; k < na * nb; ++k)
          if ((s >> k) & 1u) sup.emplace_back(k / nb, k % nb);
        for (const auto& mu : mus)
          for (const auto& nu : nus) {
            olr::TransportInstance inst;
            for (int i = 0; i < na; ++i) inst.mu.emplace("a" + std::to_string(i), mu[i]);
            for (int j = 0; j < nb; ++j) inst.nu.emplace("b" + std::to_string(j), nu[j]);
            for (auto [i, j] : sup) inst.support.emplace("a" + std::to_string(i), "b" + std::to_string(j));
            auto c = olr::transport_feasible(inst);
            auto what = [&] {
              std::string d = std::to_string(na) + "x" + std::to_string(nb) + " support=" + std::to_string(s) + " mu=";
              for (const auto& q : mu) d += olr::to_string(q) + ",";
              d += " nu=";
              for (const auto& q : nu) d += olr::to_string(q) + ",";
              return d;
            };
            bool forest = oracle::transport_forest(mu, nu, sup);
            t.forest.record(c.has_value() == forest, what);
            t.hall.record(forest == oracle::transport_hall(mu, nu, sup), what);
            if (c) {
              std::map<std::string, Rational> left, right;
              bool inside = true;
              for (const auto& [ab, w] : *c) {
                inside = inside && w > 0 && inst.support.contains(ab);
                left[ab.first] += w;
                right[ab.second] += w;
              }
              t.coupling.record(inside && left == inst.mu && right == inst.nu, what);
            }
          }
      }
    }
  return t;
}

/// Carriers for differential sweeps: X, V and Y elements as closed values
/// and distances, addressed by index.
struct DiffSpace {
  int nx, nv, ny;
  std::vector<olr::Value> xs, ys;
  std::vector<olr::DistVal> vs;
  std::map<std::string, int> xi, yi, vi;

  DiffSpace(int nx_, int nv_, int ny_) : nx(nx_), nv(nv_), ny(ny_) {
    for (int i = 0; i < nx; ++i) xs.push_back(olr::Value::constant("X", "x" + std::to_string(i)));
    for (int i = 0; i < ny; ++i) ys.push_back(olr::Value::constant("Y", "y" + std::to_string(i)));
    for (int i = 0; i < nv; ++i) vs.push_back(olr::DistVal::base(olr::Extended(Rational(i))));
    for (int i = 0; i < nx; ++i) xi.emplace(olr::key(xs[i]), i);
    for (int i = 0; i < ny; ++i) yi.emplace(olr::key(ys[i]), i);
    for (int i = 0; i < nv; ++i) vi.emplace(vs[i].key(), i);
  }

  int cells() const { return nx * nv * ny; }
  int cell(int a, int w, int b) const { return (a * nv + w) * ny + b; }

  /// delta as a bitmask over cells.
  auto delta(std::uint64_t bits) const {
    return [this, bits](const olr::Value& a, const olr::DistVal& w, const olr::Value& b) {
      return ((bits >> cell(xi.at(olr::key(a)), vi.at(w.key()), yi.at(olr::key(b)))) & 1u) != 0;
    };
  }
  std::vector<oracle::Cell> cells_of(std::uint64_t bits) const {
    std::vector<oracle::Cell> out;
    for (int a = 0; a < nx; ++a)
      for (int w = 0; w < nv; ++w)
        for (int b = 0; b < ny; ++b)
          if ((bits >> cell(a, w, b)) & 1u) out.push_back({a, w, b});
    return out;
  }
};

/// Bits of the cells (a, w, b) a witness phi could use: (a, w) in dv and b
/// in y. Both deciders only depend on delta inside these cells.
inline std::vector<int> live_cells(const DiffSpace& sp, const std::vector<std::pair<int, int>>& dv,
                                   const std::vector<int>& y) {
  std::vector<int> out;
  for (auto [a, w] : dv)
    for (int b : y) out.push_back(sp.cell(a, w, b));
  std::sort(out.begin(), out.end());
  return out;
}

/// Subsets of `live` as delta bitmasks: all of them when there are at most
/// `max_exhaustive` cells, otherwise `sampled` random draws of at most that
/// many cells.
inline std::vector<std::uint64_t> live_subsets(const std::vector<int>& live, int max_exhaustive, int sampled,
                                               std::mt19937_64& rng) {
  std::vector<std::uint64_t> out;
  auto to_bits = [&](std::uint64_t pick) {
    std::uint64_t d = 0;
    for (std::size_t c = 0; c < live.size(); ++c)
      if ((pick >> c) & 1u) d |= std::uint64_t{1} << live[c];
    return d;
  };
  if (static_cast<int>(live.size()) <= max_exhaustive) {
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << live.size()); ++pick) out.push_back(to_bits(pick));
  } else {
    const std::uint64_t full = (std::uint64_t{1} << live.size()) - 1;
    for (int k = 0; k < sampled; ++k) {
      std::uint64_t pick = rng() & full;
      while (std::popcount(pick) > max_exhaustive) pick &= ~(std::uint64_t{1} << (rng() % live.size()));
      out.push_back(to_bits(pick));
    }
  }
  return out;
}

inline std::uint64_t all_cells(const DiffSpace& sp) {
  return sp.cells() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << sp.cells()) - 1;
}

/// Powerset differential lifting against the exists-phi search, over every
/// (dv, y) with x the anchors of dv. delta ranges over every subset of the
/// live cells when there are at most `max_exhaustive` of them, and over
/// `sampled` random subsets otherwise; each is also tried with every dead
/// cell added. A mismatched x is tried on the full live set when that set is
/// small enough to search.
inline Tally diff_powerset(int max_n, int max_exhaustive, int sampled) {
  Tally t;
  std::mt19937_64 rng(20240611);
  for (int nx = 1; nx <= max_n; ++nx)
    for (int nv = 1; nv <= max_n; ++nv)
      for (int ny = 1; ny <= max_n; ++ny) {
        DiffSpace sp(nx, nv, ny);
        const std::uint64_t all = all_cells(sp);
        std::vector<olr::MVal> xsets, ysets;
        for (std::uint32_t m = 0; m < (1u << nx); ++m) {
          std::vector<olr::Value> e;
          for (int i = 0; i < nx; ++i)
            if ((m >> i) & 1u) e.push_back(sp.xs[i]);
          xsets.push_back(olr::MVal::set(e));
        }
        for (std::uint32_t m = 0; m < (1u << ny); ++m) {
          std::vector<olr::Value> e;
          for (int i = 0; i < ny; ++i)
            if ((m >> i) & 1u) e.push_back(sp.ys[i]);
          ysets.push_back(olr::MVal::set(e));
        }
        for (std::uint32_t dv = 0; dv < (1u << (nx * nv)); ++dv) {
          std::vector<std::pair<olr::Value, olr::DistVal>> e;
          std::vector<std::pair<int, int>> dv_cells;
          std::uint32_t anchors = 0;
          for (int k = 0; k < nx * nv; ++k)
            if ((dv >> k) & 1u) {
              e.emplace_back(sp.xs[k / nv], sp.vs[k % nv]);
              dv_cells.emplace_back(k / nv, k % nv);
              anchors |= 1u << (k / nv);
            }
          olr::DMVal dvm = olr::DMVal::set(e);
          for (std::uint32_t y = 0; y < ysets.size(); ++y) {
            std::vector<int> ys;
            for (int b = 0; b < ny; ++b)
              if ((y >> b) & 1u) ys.push_back(b);
            auto live = live_cells(sp, dv_cells, ys);
            std::uint64_t live_mask = 0;
            for (int c : live) live_mask |= std::uint64_t{1} << c;
            const std::uint64_t rest = all & ~live_mask;
            auto subsets = live_subsets(live, max_exhaustive, sampled, rng);
            for (std::uint64_t d : subsets) {
              // Cells outside the live set cannot occur in a witness, so the
              // search runs on the live part only.
              bool brute = oracle::powerset_exists_phi(sp.cells_of(d), nv, anchors, dv, y);
              for (std::uint64_t extra : {std::uint64_t{0}, rest}) {
                bool lib = olr::diff_holds(xsets[anchors], dvm, ysets[y], sp.delta(d | extra));
                t.record(lib == brute, [&] {
                  return std::to_string(nx) + "x" + std::to_string(nv) + "x" + std::to_string(ny) +
                         " delta=" + std::to_string(d | extra) + " dv=" + std::to_string(dv) +
                         " y=" + std::to_string(y);
                });
                if (rest == 0) break;
              }
            }
            if (static_cast<int>(live.size()) > max_exhaustive) continue;
            const std::uint32_t other = anchors ^ 1u;
            bool lib = olr::diff_holds(xsets[other], dvm, ysets[y], sp.delta(all));
            bool brute = oracle::powerset_exists_phi(sp.cells_of(live_mask), nv, other, dv, y);
            t.record(lib == brute, [&] {
              return std::to_string(nx) + "x" + std::to_string(nv) + "x" + std::to_string(ny) +
                     " mismatched x=" + std::to_string(other) + " dv=" + std::to_string(dv);
            });
          }
        }
      }
  return t;
}

/// Distribution differential lifting against the LP oracle. dv ranges over
/// distributions on X x V with at most `max_support` cells and y over
/// distributions on Y likewise, with weights whose denominators are at most
/// `max_den`; x is the first marginal of dv. Every delta inside the live
/// cells is tried, with and without the dead cells added. A point mass that
/// differs from the marginal is tried on the full live set.
inline Tally diff_dist(int max_n, int max_support, int max_den) {
  Tally t;
  std::mt19937_64 rng(20240611);
  for (int nx = 1; nx <= max_n; ++nx)
    for (int nv = 1; nv <= max_n; ++nv)
      for (int ny = 1; ny <= max_n; ++ny) {
        DiffSpace sp(nx, nv, ny);
        const std::uint64_t all = all_cells(sp);
        // Distributions over index sets with bounded support.
        auto dists = [&](int n) {
          std::vector<std::map<int, Rational>> out;
          for (std::uint32_t s = 1; s < (1u << n); ++s) {
            int k = std::popcount(s);
            if (k > max_support) continue;
            std::vector<int> idx;
            for (int i = 0; i < n; ++i)
              if ((s >> i) & 1u) idx.push_back(i);
            for (const auto& w : oracle::distributions(k, max_den)) {
              std::map<int, Rational> m;
              for (int i = 0; i < k; ++i) m.emplace(idx[i], w[i]);
              out.push_back(std::move(m));
            }
          }
          return out;
        };
        auto to_mval = [&](const std::map<int, Rational>& m, const std::vector<olr::Value>& carrier) {
          std::vector<std::pair<olr::Value, Rational>> l;
          for (const auto& [i, w] : m) l.emplace_back(carrier[i], w);
          return olr::MVal::dist(l);
        };
        auto dvs = dists(nx * nv);
        auto ysd = dists(ny);
        for (const auto& dv : dvs) {
          std::map<int, Rational> marginal;
          std::vector<std::pair<std::pair<olr::Value, olr::DistVal>, Rational>> dvlist;
          std::map<std::pair<int, int>, Rational> dv_idx;
          std::vector<std::pair<int, int>> dv_cells;
          for (const auto& [k, w] : dv) {
            marginal[k / nv] += w;
            dvlist.push_back({{sp.xs[k / nv], sp.vs[k % nv]}, w});
            dv_idx.emplace(std::pair{k / nv, k % nv}, w);
            dv_cells.emplace_back(k / nv, k % nv);
          }
          olr::DMVal dvm = olr::DMVal::dist(dvlist);
          olr::MVal xm = to_mval(marginal, sp.xs);
          std::optional<std::map<int, Rational>> other;
          for (int a = 0; a < nx && !other; ++a)
            if (!(marginal.size() == 1 && marginal.begin()->first == a)) other = std::map<int, Rational>{{a, Rational(1)}};

          for (const auto& y : ysd) {
            olr::MVal ym = to_mval(y, sp.ys);
            std::vector<int> ys;
            for (const auto& [b, _] : y) ys.push_back(b);
            auto live = live_cells(sp, dv_cells, ys);
            std::uint64_t live_mask = 0;
            for (int c : live) live_mask |= std::uint64_t{1} << c;
            const std::uint64_t rest = all & ~live_mask;
            auto what = [&](std::uint64_t bits, const olr::MVal& x) {
              return [&, bits] {
                return std::to_string(nx) + "x" + std::to_string(nv) + "x" + std::to_string(ny) +
                       " delta=" + std::to_string(bits) + " x=" + olr::to_literal(x) + " y=" + olr::to_literal(ym);
              };
            };
            for (std::uint64_t d : live_subsets(live, 64, 0, rng)) {
              bool lp = oracle::dist_exists_phi(sp.cells_of(d | rest), marginal, dv_idx, y);
              for (std::uint64_t extra : {std::uint64_t{0}, rest}) {
                bool lib = olr::diff_holds(xm, dvm, ym, sp.delta(d | extra));
                t.record(lib == lp, what(d | extra, xm));
                if (rest == 0) break;
              }
            }
            if (other) {
              olr::MVal om = to_mval(*other, sp.xs);
              bool lib = olr::diff_holds(om, dvm, ym, sp.delta(all));
              t.record(lib == oracle::dist_exists_phi(sp.cells_of(all), *other, dv_idx, y), what(all, om));
            }
          }
        }
      }
  return t;
}

}  // namespace sweep
