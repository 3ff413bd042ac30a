#include "olr/corpus.hpp"

#include <set>

namespace olr {

namespace {

std::vector<Ty> base_types(const Signature& sig) {
  std::vector<Ty> out;
  for (const auto& [name, _] : sig.bases()) out.push_back(Ty::base(name));
  return out;
}

std::vector<Ty> goal_types(const Signature& sig) {
  std::vector<Ty> bases = base_types(sig);
  std::vector<Ty> out{Ty::unit()};
  out.insert(out.end(), bases.begin(), bases.end());
  for (const auto& a : bases)
    for (const auto& b : bases) out.push_back(Ty::prod(a, b));
  std::vector<Ty> ends{Ty::unit()};
  ends.insert(ends.end(), bases.begin(), bases.end());
  for (const auto& a : ends)
    for (const auto& b : ends) out.push_back(Ty::arrow(a, b));
  return out;
}

}  // namespace

std::vector<Term> closed_corpus(const Signature& sig, int depth, std::size_t limit) {
  Enumerator en(sig);
  std::vector<Term> all;
  std::set<std::string> seen;
  for (const auto& ty : goal_types(sig)) {
    for (const auto& c : en.comps(Context{}, ty, depth))
      if (seen.insert(key(c)).second) all.emplace_back(c);
    for (const auto& v : en.values(ty, depth))
      if (seen.insert(key(v)).second) all.emplace_back(v);
  }
  return stride_sample(all, limit);
}

std::vector<OpenTerm> open_corpus(const Signature& sig, int depth, std::size_t limit) {
  Enumerator en(sig);
  std::vector<Ty> bases = base_types(sig);
  std::vector<Context> contexts;
  for (const auto& a : bases) contexts.push_back(Context{{"x", a}});
  for (const auto& a : bases)
    for (const auto& b : bases) contexts.push_back(Context{{"x", a}, {"y", b}});
  for (const auto& a : bases) contexts.push_back(Context{{"f", Ty::arrow(a, a)}});
  for (const auto& a : bases) contexts.push_back(Context{{"f", Ty::arrow(a, a)}, {"x", a}});

  std::vector<Ty> goals{Ty::unit()};
  goals.insert(goals.end(), bases.begin(), bases.end());
  for (const auto& a : bases) goals.push_back(Ty::prod(a, a));

  // Interleave contexts so that a strided sample still covers each of them.
  std::vector<std::vector<OpenTerm>> per_ctx;
  for (const auto& ctx : contexts) {
    std::vector<OpenTerm> terms;
    for (const auto& ty : goals)
      for (const auto& c : en.comps(ctx, ty, depth))
        if (!free_vars(c).empty()) terms.push_back({ctx, c});
    per_ctx.push_back(std::move(terms));
  }
  std::vector<OpenTerm> all;
  for (std::size_t i = 0;; ++i) {
    bool any = false;
    for (const auto& terms : per_ctx)
      if (i < terms.size()) {
        all.push_back(terms[i]);
        any = true;
      }
    if (!any) break;
  }
  return stride_sample(all, limit);
}

}  // namespace olr
