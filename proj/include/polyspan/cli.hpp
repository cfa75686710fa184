#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace polyspan {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInput = 2, kExitVerification = 3 };

struct Command {
    std::string verb;  // bellman-ford, floyd-warshall, run-span, check-laws, gnn-demo, verify
    std::optional<std::string> graph;
    std::optional<std::string> span;
    std::optional<std::string> input;  // run-span: rows on W, one per line
    std::string semiring = "min-plus";
    std::optional<std::size_t> source;
    std::uint64_t seed = 0;
    std::optional<std::string> out;  // file instead of `CommandResult::out`
};

struct CommandResult {
    int exit_code = kExitOk;
    std::string out;
    std::string err;
};

/// Runs one command. Never throws; failures map to the exit codes above with
/// the diagnostic in `err`.
CommandResult run_command(const Command& cmd);

}  // namespace polyspan
