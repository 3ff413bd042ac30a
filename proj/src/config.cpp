#include "olr/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace olr {

using nlohmann::json;

namespace {

MonadTag monad_named(const std::string& name, const std::string& where) {
  auto tag = parse_monad_tag(name);
  if (!tag) throw ConfigError(where + ": unknown monad '" + name + "'");
  return *tag;
}

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.contains(name)) throw ConfigError(where + ": missing '" + name + "'");
  return obj.at(name);
}

std::string as_text(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ConfigError(where + ": expected a string or an integer");
}

Extended as_distance(const json& j, const std::string& where) {
  auto e = Extended::parse(as_text(j, where));
  if (!e || (!e->is_infinite() && sgn(e->value()) < 0))
    throw ConfigError(where + ": expected a nonnegative rational or inf");
  return *e;
}

BaseRel parse_relation(const json& j, const std::vector<std::string>& lits, const std::string& where) {
  BaseRel r;
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "identity") return r;
    if (s == "total") {
      r.kind = BaseRel::Kind::Total;
      return r;
    }
    throw ConfigError(where + ": relation must be 'identity', 'total' or a list of pairs");
  }
  if (!j.is_array()) throw ConfigError(where + ": relation must be 'identity', 'total' or a list of pairs");
  r.kind = BaseRel::Kind::Pairs;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw ConfigError(where + ": relation pairs have two literals");
    std::string a = as_text(p[0], where), b = as_text(p[1], where);
    for (const auto& x : {a, b})
      if (std::find(lits.begin(), lits.end(), x) == lits.end())
        throw ConfigError(where + ": '" + x + "' is not a literal of this base");
    r.pairs.emplace(a, b);
  }
  return r;
}

BaseDistance parse_distance(const json& j, const std::vector<std::string>& lits, const std::string& where) {
  BaseDistance d;
  if (!j.is_object()) throw ConfigError(where + ": distance must be an object");
  std::string kind = j.contains("kind") ? as_text(j.at("kind"), where) : "discrete";
  if (kind == "metric") {
    d.kind = BaseDistance::Kind::Metric;
    for (const auto& l : lits)
      if (!parse_rational(l)) throw ConfigError(where + ": metric base has non-numeric literal '" + l + "'");
  } else if (kind == "discrete") {
    d.kind = BaseDistance::Kind::Discrete;
  } else if (kind == "table") {
    d.kind = BaseDistance::Kind::Table;
    for (const auto& row : field(j, "table", where)) {
      if (!row.is_array() || row.size() != 3) throw ConfigError(where + ": table rows are [a, b, distance]");
      d.table.insert_or_assign({as_text(row[0], where), as_text(row[1], where)}, as_distance(row[2], where));
    }
  } else {
    throw ConfigError(where + ": unknown distance kind '" + kind + "'");
  }
  if (j.contains("self")) d.self = as_distance(j.at("self"), where + ".self");
  return d;
}

std::map<MonadTag, std::string> parse_literal_table(const json& j, const std::string& where) {
  std::map<MonadTag, std::string> out;
  if (!j.is_object()) throw ConfigError(where + ": expected an object keyed by monad");
  for (const auto& [monad, text] : j.items()) {
    if (monad == "witness") continue;
    out.emplace(monad_named(monad, where), as_text(text, where + "." + monad));
  }
  return out;
}

}  // namespace

RunConfig default_config() {
  RunConfig cfg;
  cfg.bases.add_base("Bool", {"true", "false"});
  cfg.relations.emplace("Bool", BaseRel{});
  cfg.distances.emplace("Bool", BaseDistance{});
  cfg.effects["coin"] = {{MonadTag::Identity, "true"},
                         {MonadTag::Partial, "some(true)"},
                         {MonadTag::Powerset, "{true, false}"},
                         {MonadTag::Dist, "{true: 1/2, false: 1/2}"},
                         {MonadTag::Cost, "cost(1, true)"}};
  return cfg;
}

RunConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  RunConfig cfg;
  try {
    if (j.contains("monad")) cfg.monad = monad_named(as_text(j.at("monad"), "monad"), "monad");
    if (j.contains("depth")) cfg.depth = j.at("depth").get<int>();
    if (j.contains("fuel")) cfg.fuel = j.at("fuel").get<int>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (cfg.depth < 1) throw ConfigError("depth must be at least 1");
  if (cfg.fuel < 1) throw ConfigError("fuel must be at least 1");

  const json bases = j.contains("bases") ? j.at("bases") : json::object();
  if (!bases.is_object()) throw ConfigError("bases must be an object");
  for (const auto& [name, b] : bases.items()) {
    std::string where = "bases." + name;
    std::vector<std::string> lits;
    for (const auto& l : field(b, "literals", where)) lits.push_back(as_text(l, where + ".literals"));
    if (lits.empty()) throw ConfigError(where + ": no literals");
    try {
      cfg.bases.add_base(name, lits);
    } catch (const Error& e) {
      throw ConfigError(where + ": " + e.what());
    }
    cfg.relations.emplace(name, b.contains("relation") ? parse_relation(b.at("relation"), lits, where + ".relation")
                                                      : BaseRel{});
    cfg.distances.emplace(name, b.contains("distance") ? parse_distance(b.at("distance"), lits, where + ".distance")
                                                      : BaseDistance{});
  }

  if (j.contains("effects")) {
    for (const auto& [name, e] : j.at("effects").items()) {
      std::string where = "effects." + name;
      cfg.effects[name] = parse_literal_table(e, where);
      if (e.contains("witness")) cfg.witnesses[name] = parse_literal_table(e.at("witness"), where + ".witness");
    }
  }

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    if (g.contains("dfun_limit")) cfg.limits.dfun_limit = g.at("dfun_limit").get<long>();
    if (g.contains("search_limit")) cfg.limits.search_limit = g.at("search_limit").get<long>();
  }

  if (j.contains("noninterference")) {
    const json& n = j.at("noninterference");
    std::vector<std::string> levels;
    std::vector<std::pair<std::string, std::string>> order;
    std::set<std::string> hidden;
    for (const auto& l : field(n, "levels", "noninterference")) levels.push_back(as_text(l, "noninterference.levels"));
    if (n.contains("order"))
      for (const auto& p : n.at("order")) {
        if (!p.is_array() || p.size() != 2) throw ConfigError("noninterference.order: entries are [lo, hi]");
        order.emplace_back(as_text(p[0], "noninterference.order"), as_text(p[1], "noninterference.order"));
      }
    if (n.contains("hidden"))
      for (const auto& h : n.at("hidden")) hidden.insert(as_text(h, "noninterference.hidden"));
    cfg.policy.lattice = SecurityLattice(levels, order, hidden);
    if (n.contains("labels"))
      for (const auto& [var, level] : n.at("labels").items()) {
        std::string l = as_text(level, "noninterference.labels");
        if (!cfg.policy.lattice.has(l)) throw ConfigError("noninterference.labels: unknown level " + l);
        cfg.policy.labels.emplace(var, l);
      }
    if (n.contains("check_monotonicity")) cfg.policy.check_monotonicity = n.at("check_monotonicity").get<bool>();
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Session make_session(const RunConfig& cfg, const std::vector<EffectDecl>& effects) {
  Session s;
  s.sig = cfg.bases;
  for (const auto& e : effects) s.sig.add_effect(e);
  s.interp.tag = cfg.monad;
  for (const auto& e : effects) {
    auto it = cfg.effects.find(e.name);
    if (it == cfg.effects.end()) continue;
    auto lit = it->second.find(cfg.monad);
    if (lit == it->second.end()) continue;
    try {
      s.interp.effects.emplace(e.name, parse_mval(cfg.monad, lit->second, s.sig));
    } catch (const Error& err) {
      throw ConfigError("effects." + e.name + "." + std::string(to_string(cfg.monad)) + ": " + err.what());
    }
  }
  validate_interp(s.interp, s.sig);

  s.relations.bases = cfg.relations;
  s.distances.bases = cfg.distances;
  for (const auto& e : effects) {
    auto it = cfg.witnesses.find(e.name);
    if (it == cfg.witnesses.end()) continue;
    auto lit = it->second.find(cfg.monad);
    if (lit == it->second.end()) continue;
    try {
      DistTy shape = dsp_of_comp(s.distances, cfg.monad, e.result);
      s.distances.effect_witness.emplace(e.name, parse_distval(shape, lit->second, s.sig));
    } catch (const Error& err) {
      throw ConfigError("effects." + e.name + ".witness." + std::string(to_string(cfg.monad)) + ": " + err.what());
    }
  }
  return s;
}

}  // namespace olr
