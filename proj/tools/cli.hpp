#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace alblab::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_domain = 1;
inline constexpr int exit_convergence = 2;
inline constexpr int exit_usage = 64;
inline constexpr int exit_bad_json = 65;

struct Outcome {
	int exit_code = exit_ok;
	nlohmann::json output; // result, or {"error": ..., "kind": ...}
	std::string help;      // set instead of output for --help
};

/// Runs one command line (without the program name).  `tol_env` stands in
/// for the ALBLAB_TOL environment variable.
Outcome run(std::vector<std::string> const &args, std::optional<std::string> const &tol_env = std::nullopt);

/// Batch request: {"command": "alb map", "args": {"x": "0.5"}}, an array of
/// such objects, or {"batch": [...], "workers": n}.  Results keep the input
/// order.
Outcome run_batch(std::string const &text, std::optional<std::string> const &tol_env, int workers);

struct CommandInfo {
	std::string command;   // "alb map"
	std::string operation; // library operation it exposes
};
std::vector<CommandInfo> const &command_table();

} // namespace alblab::cli
