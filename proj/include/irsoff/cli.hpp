#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irsoff/scenario.hpp"

namespace irsoff {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kCsvSchemaVersion = 1;

// A fully parsed invocation. Exactly one subcommand is set by parse_cli.
struct Command {
    enum class Kind { Run, Sweep, Convergence, Overhead, MatchDebug };
    Kind kind = Kind::Run;

    std::string config_path;   // empty: built-in defaults
    std::string outdir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    bool serial = false;
    std::vector<std::string> scheme_names;    // empty: subcommand default
    std::vector<std::string> overrides;       // section.key=value entries

    // sweep
    std::string axis = "elements";
    std::vector<double> values;

    // match-debug
    std::string cost_csv;
};

// Raised for bad usage that CLI11 itself cannot catch (e.g. malformed
// --set entries discovered at dispatch time). Maps to exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses an argument vector (without the program name). Throws CLI11 parse
// errors for unknown flags and UsageError for semantically bad input.
Command parse_cli(const std::vector<std::string>& args);

// Resolves the effective config for a command: file (or defaults), then
// --set overrides, then seed/trials/serial switches, then validation.
ScenarioConfig resolve_config(const Command& cmd);

// Executes a parsed command, writing outputs under cmd.outdir.
void run_command(const Command& cmd);

// Full entry point: parse + dispatch + exit-code policy
// (0 success, 1 usage error, 2 runtime failure).
int run_cli(int argc, const char* const* argv);

}  // namespace irsoff
