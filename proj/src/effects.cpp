#include "olr/effects.hpp"

#include "literal.hpp"

namespace olr {

std::string_view to_string(MonadTag tag) {
  switch (tag) {
    case MonadTag::Identity:
      return "identity";
    case MonadTag::Partial:
      return "partial";
    case MonadTag::Powerset:
      return "powerset";
    case MonadTag::Dist:
      return "dist";
    case MonadTag::Cost:
      return "cost";
  }
  return "?";
}

std::optional<MonadTag> parse_monad_tag(std::string_view name) {
  for (MonadTag t : kAllMonads)
    if (to_string(t) == name) return t;
  return std::nullopt;
}

MVal m_unit(MonadTag tag, const Value& v) { return MVal::unit(tag, v); }

std::string to_literal(const MVal& m) {
  return detail::print_monadic<Value>(m, [](const Value& v) { return to_string(canonical(v)); });
}

MVal parse_mval(MonadTag tag, std::string_view text, const Signature& sig) {
  detail::TermParser p(detail::tokenize(text), sig);
  MVal m = detail::parse_monadic<Value>(p, tag, [](detail::TermParser& q) { return q.operand(); });
  if (!p.at_end()) p.fail("trailing input after monadic literal");
  return m;
}

const MVal& interpret_effect(MonadTag tag, const EffectInterp& interp, const Signature& sig,
                             const std::string& name) {
  if (!sig.effect(name)) throw EvalError("undeclared effect '" + name + "'");
  auto it = interp.effects.find(name);
  if (it == interp.effects.end())
    throw EvalError("effect '" + name + "' has no interpretation in the " + std::string(to_string(tag)) + " monad");
  if (interp.tag != tag || it->second.tag() != tag)
    throw EvalError("effect '" + name + "' is interpreted in the " + std::string(to_string(it->second.tag())) +
                    " monad, not " + std::string(to_string(tag)));
  return it->second;
}

void validate_interp(const EffectInterp& interp, const Signature& sig) {
  for (const auto& [name, m] : interp.effects) {
    const EffectDecl* decl = sig.effect(name);
    if (!decl) continue;  // interpretations for effects a program does not declare are harmless
    if (m.tag() != interp.tag)
      throw ConfigError("interpretation of '" + name + "' is in the wrong monad");
    for (const auto& v : m.support()) {
      Ty got = [&] {
        try {
          return typecheck_value(sig, Context{}, v);
        } catch (const TypeError& e) {
          throw ConfigError("interpretation of '" + name + "': " + e.what());
        }
      }();
      if (!(got == decl->result))
        throw ConfigError("interpretation of '" + name + "' contains " + to_string(v) + " of type " + got.str() +
                          ", expected " + decl->result.str());
    }
    if (interp.tag == MonadTag::Partial && m.is_timeout())
      throw ConfigError("'" + name + "': timeout only arises from fuel exhaustion, not from effects");
  }
}

}  // namespace olr
