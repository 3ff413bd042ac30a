// olr: typecheck, evaluate and check programs of the fine-grain calculus.

#include <iostream>

#include <CLI11.hpp>

#include "olr/commands.hpp"

namespace {

int emit(const olr::CommandResult& r) {
  std::cout << r.out;
  std::cerr << r.err;
  return r.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operational logical relations checker"};
  app.require_subcommand(1);

  std::string config_path, monad_name;
  int depth = 0, fuel = 0;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--depth", depth, "enumeration depth (overrides the config)")->check(CLI::PositiveNumber);
  app.add_option("--fuel", fuel, "evaluation fuel (overrides the config)")->check(CLI::PositiveNumber);
  app.add_option("--monad", monad_name, "identity | partial | powerset | dist | cost");

  std::vector<std::string> files;
  auto* typecheck = app.add_subcommand("typecheck", "typecheck every declaration");
  typecheck->add_option("files", files, "program files")->required()->check(CLI::ExistingFile);

  auto* eval = app.add_subcommand("eval", "evaluate closed declarations");
  eval->add_option("files", files, "program files")->required()->check(CLI::ExistingFile);

  std::string mode_name = "logrel";
  auto* check = app.add_subcommand("check", "run a check suite and print a JSON report");
  check->add_option("--mode", mode_name, "logrel | dlr | noninterference | coherence")
      ->check(CLI::IsMember({"logrel", "dlr", "noninterference", "coherence"}));
  check->add_option("files", files, "program files")->required()->check(CLI::ExistingFile);

  std::string left, right;
  auto* distance = app.add_subcommand("distance", "search a distance between two closed programs");
  distance->add_option("left", left)->required()->check(CLI::ExistingFile);
  distance->add_option("right", right)->required()->check(CLI::ExistingFile);

  std::string instance;
  auto* feasible = app.add_subcommand("feasible", "decide a transport instance");
  feasible->add_option("instance", instance, "JSON instance")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (feasible->parsed()) return emit(olr::cmd_feasible(instance));

  olr::RunConfig cfg;
  try {
    cfg = config_path.empty() ? olr::default_config() : olr::load_config(config_path);
    if (depth > 0) cfg.depth = depth;
    if (fuel > 0) cfg.fuel = fuel;
    if (!monad_name.empty()) {
      auto tag = olr::parse_monad_tag(monad_name);
      if (!tag) throw olr::ConfigError("unknown monad '" + monad_name + "'");
      cfg.monad = *tag;
    }
  } catch (const olr::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  if (typecheck->parsed()) return emit(olr::cmd_typecheck(files, cfg));
  if (eval->parsed()) return emit(olr::cmd_eval(files, cfg));
  if (check->parsed()) return emit(olr::cmd_check(files, cfg, *olr::parse_check_mode(mode_name)));
  return emit(olr::cmd_distance(left, right, cfg));
}
