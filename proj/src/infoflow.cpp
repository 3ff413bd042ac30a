#include "olr/infoflow.hpp"

#include <algorithm>

namespace olr {

SecurityLattice::SecurityLattice(std::vector<std::string> levels,
                                 const std::vector<std::pair<std::string, std::string>>& order,
                                 std::set<std::string> hidden)
    : levels_(std::move(levels)), hidden_(std::move(hidden)) {
  if (levels_.empty()) throw ConfigError("security lattice has no levels");
  for (const auto& l : levels_) leq_.emplace(l, l);
  for (const auto& [lo, hi] : order) {
    if (!has(lo) || !has(hi)) throw ConfigError("order mentions unknown level " + (has(lo) ? hi : lo));
    leq_.emplace(lo, hi);
  }
  for (const auto& h : hidden_)
    if (!has(h)) throw ConfigError("unknown hidden level " + h);
  // Warshall closure; the lattices here have a handful of levels.
  for (const auto& k : levels_)
    for (const auto& i : levels_)
      for (const auto& j : levels_)
        if (leq_.contains({i, k}) && leq_.contains({k, j})) leq_.emplace(i, j);
  for (const auto& [a, b] : leq_)
    if (a != b && leq_.contains({b, a})) throw ConfigError("levels " + a + " and " + b + " form a cycle");
}

SecurityLattice SecurityLattice::two_point() { return SecurityLattice({"private", "public"}, {{"private", "public"}}, {"private"}); }

bool SecurityLattice::has(const std::string& level) const {
  return std::find(levels_.begin(), levels_.end(), level) != levels_.end();
}

IndexedRel mask_lift(const SecurityLattice& lattice, const IndexedRel& ir) {
  IndexedRel out;
  for (const auto& [level, r] : ir.at)
    out.at.emplace(level, lattice.hidden(level) ? Rel::total(r.left, r.right) : r);
  return out;
}

std::vector<std::pair<std::string, std::string>> monotonicity_violations(const SecurityLattice& lattice,
                                                                        const IndexedRel& ir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& lo : lattice.levels())
    for (const auto& hi : lattice.levels()) {
      if (lo == hi || !lattice.leq(lo, hi) || !ir.at.contains(lo) || !ir.at.contains(hi)) continue;
      const auto& big = ir.at.at(hi).pairs;
      for (const auto& p : ir.at.at(lo).pairs)
        if (!big.contains(p)) {
          out.emplace_back(lo, hi);
          break;
        }
    }
  return out;
}

IndexedRel variable_family(const SecurityLattice& lattice, const LogicalRelation& lr, const Ty& ty) {
  IndexedRel ir;
  Rel r = lr.materialize(ty);
  for (const auto& level : lattice.levels()) ir.at.emplace(level, r);
  return ir;
}

std::vector<CheckReport> check_noninterference(const Evaluator& ev, const Enumerator& en, const RelAssignment& assign,
                                               const FlowPolicy& policy, const Context& ctx, const Term& t,
                                               int depth) {
  const SecurityLattice& lattice = policy.lattice;
  for (const auto& [var, level] : policy.labels)
    if (!lattice.has(level)) throw ConfigError("variable " + var + " labelled with unknown level " + level);

  LogicalRelation plain(ev, en, assign, depth);
  std::map<std::string, Rel> inputs;
  std::vector<std::string> mono_notes;
  for (const auto& [name, ty] : ctx.entries()) {
    IndexedRel masked = mask_lift(lattice, variable_family(lattice, plain, ty));
    auto label = policy.labels.find(name);
    inputs.emplace(name, label == policy.labels.end() ? plain.materialize(ty) : masked.at.at(label->second));
    if (policy.check_monotonicity)
      for (const auto& [lo, hi] : monotonicity_violations(lattice, masked))
        mono_notes.push_back("monotonicity: family of " + name + " has R(" + lo + ") not contained in R(" + hi + ")");
  }

  const Ty ty = typecheck(ev.signature(), ctx, t);
  std::vector<CheckReport> reports;
  for (const auto& level : lattice.levels()) {
    const bool hidden = lattice.hidden(level);
    LogicalRelation observer(ev, en, assign, depth,
                             [hidden](const LogicalRelation& lr, const Ty& rty, const MVal& m, const MVal& n) {
                               if (hidden) return true;
                               return barr_holds(m, n, [&](const Value& a, const Value& b) {
                                 return lr.related(rty, a, b);
                               });
                             });
    CheckReport report = make_report(ev, ctx, t, depth);
    report.level = level;
    report.notes = mono_notes;
    report.stability_violations = stability_violations(observer);
    if (!report.stability_violations.empty()) {
      reports.push_back(std::move(report));
      continue;
    }

    // Cartesian product of the masked input relations.
    const auto& entries = ctx.entries();
    Bindings left, right;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
      if (i == entries.size()) {
        ++report.cases;
        if (const auto* v = std::get_if<Value>(&t)) {
          Value a = substitute(*v, left), b = substitute(*v, right);
          if (!observer.related(ty, a, b)) report.failures.push_back({left, right, to_string(a) + " vs " + to_string(b)});
        } else {
          const Comp& c = std::get<Comp>(t);
          MVal m = ev.eval(substitute(c, left));
          MVal n = ev.eval(substitute(c, right));
          if (!observer.related_mval(ty, m, n))
            report.failures.push_back({left, right, to_literal(m) + " vs " + to_literal(n)});
        }
        return;
      }
      const auto& [name, vty] = entries[i];
      const Rel& r = inputs.at(name);
      for (const auto& a : r.left)
        for (const auto& b : r.right) {
          if (!r.holds(a, b)) continue;
          left.insert_or_assign(name, a);
          right.insert_or_assign(name, b);
          go(i + 1);
        }
    };
    go(0);
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace olr
