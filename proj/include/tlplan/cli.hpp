#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace tlplan {

enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 2,
    kExitInfeasible = 3,
    kExitInternal = 4,
    kExitVerifyFailed = 5,
};

struct RunConfig {
    std::string workspace;
    std::string task;
    std::string plan;                 // input plan for verify and simulate
    std::string mode = "full";        // full | reduced | joint-tuple-only
    std::uint64_t seed = 0;
    std::string out;                  // plan file (plan) or trajectory file (simulate)
    std::string report;               // statistics report; empty disables it
    int cycles = 3;                   // suffix repetitions for simulate
    std::string format = "csv";       // csv | json
    bool check_midpoints = false;
    bool timing = true;               // wall-clock fields in the report
    int threads = 0;
    std::size_t max_iterations = 0;
    std::vector<std::uint64_t> sizes; // stats: component size overrides
    std::optional<std::uint64_t> nba_states;
};

/// Each command prints exactly one JSON status line to `status` and returns
/// the process exit code. Human-readable diagnostics go to `diag`.
int cmd_plan(const RunConfig& cfg, std::ostream& status, std::ostream& diag);
int cmd_verify(const RunConfig& cfg, std::ostream& status, std::ostream& diag);
int cmd_simulate(const RunConfig& cfg, std::ostream& status, std::ostream& diag);
int cmd_stats(const RunConfig& cfg, std::ostream& status, std::ostream& diag);

}  // namespace tlplan
