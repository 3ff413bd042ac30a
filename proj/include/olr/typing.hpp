#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "olr/syntax.hpp"

namespace olr {

/// A generic effect symbol with its (closed) result type.
struct EffectDecl {
  std::string name;
  Ty result;
  Span at;
};

/// Base types with their finite literal sets, plus declared effects.
class Signature {
 public:
  void add_base(const std::string& name, std::vector<std::string> literals);
  void add_effect(EffectDecl decl);

  bool has_base(const std::string& name) const { return bases_.contains(name); }
  const std::vector<std::string>& literals(const std::string& base) const;
  const std::map<std::string, std::vector<std::string>>& bases() const { return bases_; }

  /// Base types whose literal set contains `lit`.
  std::vector<std::string> bases_with_literal(const std::string& lit) const;

  const EffectDecl* effect(const std::string& name) const;
  const std::vector<EffectDecl>& effects() const { return effects_; }

  /// Throws TypeError when `ty` mentions an undeclared base.
  void check_type(const Ty& ty, Span at = {}) const;

 private:
  std::map<std::string, std::vector<std::string>> bases_;
  std::vector<EffectDecl> effects_;
};

/// Ordered typing context with pairwise distinct names. Extending with an
/// existing name replaces (shadows) the earlier entry.
class Context {
 public:
  Context() = default;
  Context(std::initializer_list<std::pair<std::string, Ty>> entries);

  Context extended(const std::string& name, const Ty& ty) const;
  const Ty* lookup(const std::string& name) const;

  const std::vector<std::pair<std::string, Ty>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::string str() const;

 private:
  std::vector<std::pair<std::string, Ty>> entries_;
};

Ty typecheck_value(const Signature& sig, const Context& ctx, const Value& v);
Ty typecheck_comp(const Signature& sig, const Context& ctx, const Comp& t);
Ty typecheck(const Signature& sig, const Context& ctx, const Term& t);

}  // namespace olr
