#pragma once

// The command-line subcommands as library functions. Each returns the exit
// status with what it would print; the CLI only forwards the streams.
//
// Exit status: 0 success, 1 failed check or ill-typed input, 2 usage,
// configuration or input errors.

#include <string>
#include <vector>

#include "olr/config.hpp"

namespace olr {

enum class CheckMode { Logrel, Dlr, Noninterference, Coherence };

std::string_view to_string(CheckMode mode);
std::optional<CheckMode> parse_check_mode(std::string_view name);

struct CommandResult {
  int status = 0;
  std::string out;
  std::string err;
};

CommandResult cmd_typecheck(const std::vector<std::string>& files, const RunConfig& cfg);
CommandResult cmd_eval(const std::vector<std::string>& files, const RunConfig& cfg);

/// Runs one check per declaration and prints a JSON report (schema
/// "olr-report/1"). Declarations appear in file order.
CommandResult cmd_check(const std::vector<std::string>& files, const RunConfig& cfg, CheckMode mode);

/// Searches a distance between the last declarations of two files.
CommandResult cmd_distance(const std::string& left, const std::string& right, const RunConfig& cfg);

/// Decides a transport instance read from JSON:
///   {"mu": {"a": "1/2", ...}, "nu": {...}, "support": [["a", "b"], ...]}
CommandResult cmd_feasible(const std::string& instance_file);

}  // namespace olr
