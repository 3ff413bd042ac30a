#pragma once

// Deterministic corpora of well-typed terms for the check suites.

#include <cstddef>
#include <vector>

#include "olr/enumerate.hpp"

namespace olr {

struct OpenTerm {
  Context ctx;
  Term term;
};

/// Closed terms of depth <= `depth` at a spread of goal types built from the
/// signature's bases: computations and values, deduplicated up to
/// alpha-equivalence. When more than `limit` are available, an evenly
/// strided subset is kept.
std::vector<Term> closed_corpus(const Signature& sig, int depth, std::size_t limit);

/// Open computations of depth <= `depth` that mention at least one variable
/// of their context. Contexts have one or two variables of base type, or a
/// single endofunction on a base type, optionally next to a base variable.
std::vector<OpenTerm> open_corpus(const Signature& sig, int depth, std::size_t limit);

/// Every `k`-th element so that at most `limit` remain, keeping the first.
template <class T>
std::vector<T> stride_sample(const std::vector<T>& xs, std::size_t limit) {
  if (xs.size() <= limit || limit == 0) return xs;
  std::vector<T> out;
  out.reserve(limit);
  for (std::size_t i = 0; i < limit; ++i) out.push_back(xs[i * xs.size() / limit]);
  return out;
}

}  // namespace olr
