#include "olr/commands.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "olr/coherence.hpp"

namespace olr {

using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kReportSchema = "olr-report/1";
constexpr std::size_t kListedFailures = 20;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  std::string file;
  Program program;
};

// Parses every file; all effect declarations share one signature.
std::vector<Loaded> load_programs(const std::vector<std::string>& files, const RunConfig& cfg) {
  std::vector<Loaded> out;
  for (const auto& f : files) out.push_back({f, parse_program(read_file(f), cfg.bases)});
  return out;
}

std::vector<EffectDecl> all_effects(const std::vector<Loaded>& loaded) {
  std::vector<EffectDecl> out;
  for (const auto& l : loaded)
    for (const auto& e : l.program.effects) {
      for (const auto& seen : out)
        if (seen.name == e.name && !(seen.result == e.result))
          throw TypeError(e.at, "effect '" + e.name + "' declared with types " + seen.result.str() + " and " +
                                    e.result.str());
      out.push_back(e);
    }
  return out;
}

ojson bindings_json(const Bindings& b) {
  ojson j = ojson::object();
  for (const auto& [name, v] : b) j[name] = to_string(canonical(v));
  return j;
}

ojson report_json(const std::string& file, const std::string& decl, const CheckReport& r) {
  ojson j;
  j["file"] = file;
  j["declaration"] = decl;
  j["term"] = r.term;
  j["context"] = r.context;
  j["type"] = r.type;
  if (!r.level.empty()) j["level"] = r.level;
  j["monad"] = std::string(to_string(r.monad));
  j["depth"] = r.depth;
  j["cases"] = r.cases;
  j["passed"] = r.passed();
  j["failure_count"] = r.failures.size();
  ojson fails = ojson::array();
  for (std::size_t i = 0; i < r.failures.size() && i < kListedFailures; ++i) {
    const auto& f = r.failures[i];
    fails.push_back({{"left_subst", bindings_json(f.left)},
                     {"right_subst", bindings_json(f.right)},
                     {"witness", f.witness}});
  }
  j["failures"] = fails;
  j["stability_violations"] = r.stability_violations;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

// All closing substitutions of `ctx` drawn from the enumerated carriers.
void for_each_subst(const Enumerator& en, const Context& ctx, int depth,
                    const std::function<void(const Bindings&)>& visit) {
  const auto& entries = ctx.entries();
  std::vector<std::vector<Value>> carriers;
  for (const auto& [_, ty] : entries) carriers.push_back(en.values(ty, depth));
  Bindings rho;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == entries.size()) {
      visit(rho);
      return;
    }
    for (const auto& v : carriers[i]) {
      rho.insert_or_assign(entries[i].first, v);
      go(i + 1);
    }
  };
  go(0);
}

CheckReport coherence_report(const Evaluator& ev, const Enumerator& en, const Decl& d, int depth) {
  CheckReport r = make_report(ev, d.params, d.body, depth);
  for_each_subst(en, d.params, depth, [&](const Bindings& rho) {
    for (const auto& res : check_all_laws(ev, en, d.body, rho, depth)) {
      ++r.cases;
      if (!res.pass)
        r.failures.push_back({rho, rho,
                              std::string(to_string(res.law)) + " on " + res.witness + ": " + res.left_path +
                                  " vs " + res.right_path});
    }
  });
  return r;
}

CommandResult usage_error(const std::string& msg) { return {2, "", msg + "\n"}; }

}  // namespace

std::string_view to_string(CheckMode mode) {
  switch (mode) {
    case CheckMode::Logrel:
      return "logrel";
    case CheckMode::Dlr:
      return "dlr";
    case CheckMode::Noninterference:
      return "noninterference";
    case CheckMode::Coherence:
      return "coherence";
  }
  return "?";
}

std::optional<CheckMode> parse_check_mode(std::string_view name) {
  for (CheckMode m : {CheckMode::Logrel, CheckMode::Dlr, CheckMode::Noninterference, CheckMode::Coherence})
    if (to_string(m) == name) return m;
  return std::nullopt;
}

CommandResult cmd_typecheck(const std::vector<std::string>& files, const RunConfig& cfg) {
  CommandResult res;
  for (const auto& f : files) {
    try {
      Program p = parse_program(read_file(f), cfg.bases);
      Signature sig = cfg.bases;
      for (const auto& e : p.effects) sig.add_effect(e);
      for (const auto& d : p.decls) {
        try {
          Ty ty = typecheck(sig, d.params, d.body);
          res.out += f + ": " + d.name + " : " + (d.params.empty() ? "" : d.params.str() + " |- ") +
                     (std::holds_alternative<Comp>(d.body) ? "C " : "") + ty.str() + "\n";
        } catch (const TypeError& e) {
          res.err += f + ":" + e.what() + "\n";
          res.status = 1;
        }
      }
    } catch (const SyntaxError& e) {
      res.err += f + ":" + e.what() + "\n";
      res.status = 1;
    } catch (const TypeError& e) {
      res.err += f + ":" + e.what() + "\n";
      res.status = 1;
    } catch (const Error& e) {
      res.err += f + ": " + e.what() + "\n";
      res.status = 2;
    }
  }
  return res;
}

CommandResult cmd_eval(const std::vector<std::string>& files, const RunConfig& cfg) {
  CommandResult res;
  try {
    auto loaded = load_programs(files, cfg);
    Session s = make_session(cfg, all_effects(loaded));
    Evaluator ev(s.sig, {cfg.monad, s.interp, cfg.fuel});
    for (const auto& l : loaded)
      for (const auto& d : l.program.decls) {
        typecheck(s.sig, d.params, d.body);
        if (!d.params.empty()) {
          res.out += d.name + " : open, not evaluated\n";
        } else if (const auto* c = std::get_if<Comp>(&d.body)) {
          res.out += d.name + " = " + to_literal(ev.eval(*c)) + "\n";
        } else {
          res.out += d.name + " = " + to_string(canonical(std::get<Value>(d.body))) + "\n";
        }
      }
  } catch (const SyntaxError& e) {
    return {1, res.out, std::string(e.what()) + "\n"};
  } catch (const TypeError& e) {
    return {1, res.out, std::string(e.what()) + "\n"};
  } catch (const EvalError& e) {
    return {1, res.out, std::string(e.what()) + "\n"};
  } catch (const Error& e) {
    return {2, res.out, std::string(e.what()) + "\n"};
  }
  return res;
}

CommandResult cmd_check(const std::vector<std::string>& files, const RunConfig& cfg, CheckMode mode) {
  ojson report;
  report["schema"] = kReportSchema;
  report["mode"] = std::string(to_string(mode));
  report["monad"] = std::string(to_string(cfg.monad));
  report["depth"] = cfg.depth;
  report["fuel"] = cfg.fuel;
  report["files"] = files;
  ojson decls = ojson::array();
  long cases = 0, failures = 0, stability = 0;

  try {
    auto loaded = load_programs(files, cfg);
    Session s = make_session(cfg, all_effects(loaded));
    Evaluator ev(s.sig, {cfg.monad, s.interp, cfg.fuel});
    Enumerator en(s.sig);
    std::optional<LogicalRelation> lr;
    std::optional<DlrEngine> dlr;
    if (mode == CheckMode::Logrel) lr.emplace(ev, en, s.relations, cfg.depth);
    if (mode == CheckMode::Dlr) dlr.emplace(ev, en, s.distances, cfg.depth, cfg.limits);

    for (const auto& l : loaded)
      for (const auto& d : l.program.decls) {
        typecheck(s.sig, d.params, d.body);
        std::vector<CheckReport> rs;
        std::optional<std::string> derivative;
        switch (mode) {
          case CheckMode::Logrel:
            rs.push_back(check_fundamental(*lr, d.params, d.body));
            break;
          case CheckMode::Dlr:
            rs.push_back(dlr->check_fundamental(d.params, d.body));
            if (d.params.empty()) derivative = dlr->derive(d.body, {}, {}).str();
            break;
          case CheckMode::Noninterference:
            rs = check_noninterference(ev, en, s.relations, cfg.policy, d.params, d.body, cfg.depth);
            break;
          case CheckMode::Coherence:
            rs.push_back(coherence_report(ev, en, d, cfg.depth));
            break;
        }
        for (auto& r : rs) {
          r.name = d.name;
          ojson j = report_json(l.file, d.name, r);
          if (derivative) j["derivative"] = *derivative;
          decls.push_back(std::move(j));
          cases += r.cases;
          failures += static_cast<long>(r.failures.size());
          stability += static_cast<long>(r.stability_violations.size());
        }
      }
  } catch (const SyntaxError& e) {
    return {1, "", std::string(e.what()) + "\n"};
  } catch (const TypeError& e) {
    return {1, "", std::string(e.what()) + "\n"};
  } catch (const Error& e) {
    return {2, "", std::string(e.what()) + "\n"};
  }

  report["declarations"] = decls;
  report["total_cases"] = cases;
  report["failures"] = failures;
  report["stability_violations"] = stability;
  report["passed"] = failures == 0 && stability == 0;
  return {failures == 0 && stability == 0 ? 0 : 1, report.dump(2) + "\n", ""};
}

CommandResult cmd_distance(const std::string& left, const std::string& right, const RunConfig& cfg) {
  try {
    auto loaded = load_programs({left, right}, cfg);
    Session s = make_session(cfg, all_effects(loaded));
    auto last_closed = [&](const Loaded& l) {
      if (l.program.decls.empty()) throw ConfigError(l.file + ": no declarations");
      const Decl& d = l.program.decls.back();
      if (!d.params.empty()) throw ConfigError(l.file + ": declaration '" + d.name + "' is not closed");
      Ty ty = typecheck(s.sig, d.params, d.body);
      Comp c = std::holds_alternative<Comp>(d.body) ? std::get<Comp>(d.body) : Comp::ret(std::get<Value>(d.body));
      return std::pair{c, ty};
    };
    auto [t, tt] = last_closed(loaded[0]);
    auto [u, ut] = last_closed(loaded[1]);
    if (!(tt == ut)) return {1, "", "type mismatch: " + tt.str() + " vs " + ut.str() + "\n"};

    Evaluator ev(s.sig, {cfg.monad, s.interp, cfg.fuel});
    Enumerator en(s.sig);
    DlrEngine dlr(ev, en, s.distances, cfg.depth, cfg.limits);
    auto found = dlr.distance_search(tt, t, u);
    ojson j;
    j["schema"] = "olr-distance/1";
    j["left"] = to_string(t);
    j["right"] = to_string(u);
    j["type"] = tt.str();
    j["monad"] = std::string(to_string(cfg.monad));
    j["distance_shape"] = dlr.dsp_comp(tt).str();
    j["grid_size"] = dlr.grid(tt).size();
    j["searched"] = found.searched;
    if (found.witness)
      j["distance"] = found.witness->str();
    else
      j["distance"] = nullptr;
    return {0, j.dump(2) + "\n", ""};
  } catch (const SyntaxError& e) {
    return {1, "", std::string(e.what()) + "\n"};
  } catch (const TypeError& e) {
    return {1, "", std::string(e.what()) + "\n"};
  } catch (const Error& e) {
    return {2, "", std::string(e.what()) + "\n"};
  }
}

CommandResult cmd_feasible(const std::string& instance_file) {
  TransportInstance inst;
  try {
    auto j = nlohmann::json::parse(read_file(instance_file));
    auto weights = [](const nlohmann::json& m, const char* which) {
      std::map<std::string, Rational> out;
      for (const auto& [k, v] : m.items()) {
        auto q = parse_rational(v.is_string() ? v.get<std::string>() : v.dump());
        if (!q) throw ConfigError(std::string(which) + "(" + k + ") is not a rational");
        out.emplace(k, *q);
      }
      return out;
    };
    inst.mu = weights(j.at("mu"), "mu");
    inst.nu = weights(j.at("nu"), "nu");
    for (const auto& p : j.at("support")) inst.support.emplace(p.at(0).get<std::string>(), p.at(1).get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    return usage_error(std::string("malformed instance: ") + e.what());
  } catch (const Error& e) {
    return usage_error(e.what());
  }
  try {
    auto c = transport_feasible(inst);
    ojson out;
    out["feasible"] = c.has_value();
    if (c) {
      ojson cells = ojson::array();
      for (const auto& [ab, w] : *c) cells.push_back({ab.first, ab.second, to_string(w)});
      out["coupling"] = cells;
    }
    return {c ? 0 : 1, out.dump(2) + "\n", ""};
  } catch (const Error& e) {
    return usage_error(e.what());
  }
}

}  // namespace olr
