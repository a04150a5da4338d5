#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "infeig/errors.hpp"
#include "infeig_app/config.hpp"

namespace infeig::app {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kSolverFailure = 3,
    kVerificationFailure = 4,
};

/// Exit status for a library error.
int exit_code_for(const Error& e);

struct CommandOutput {
    int exit_code = kOk;
    std::vector<std::filesystem::path> artifacts;
};

/// solution.csv + solution.json
CommandOutput run_solve(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
/// eigen.json + phi.csv
CommandOutput run_eigen(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
/// trace.csv + summary.json
CommandOutput run_evolve(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
/// mpcheck.json
CommandOutput run_mpcheck(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
/// verify.json; `only` restricts the criteria (empty: all)
CommandOutput run_verify(const std::vector<int>& only, const std::filesystem::path& out, std::ostream& log);

/// Timestamps and settings of one invocation; kept apart from the data files
/// so that those stay byte-identical across reruns.
std::string run_meta_json(const std::string& subcommand, const std::string& config_path,
                          const std::vector<std::string>& overrides, const std::string& started,
                          const std::string& finished, double elapsed, const CommandOutput& result);

std::string utc_timestamp();

}  // namespace infeig::app
