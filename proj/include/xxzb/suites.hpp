// Verification suites behind the CLI subcommands. Each suite builds a Report and the
// data files it wants written; nothing touches the disk until write_outputs.

#pragma once

#include "xxzb/config.hpp"
#include "xxzb/report.hpp"

#include <string>
#include <utility>
#include <vector>

namespace xxzb {

struct SuiteOutput {
    Report report;
    std::vector<std::pair<std::string, std::string>> files;  // (file name, content)
};

SuiteOutput cmd_verify_algebra(const RunConfig& cfg);
SuiteOutput cmd_spectrum(const RunConfig& cfg);
SuiteOutput cmd_amplitude(const RunConfig& cfg);
SuiteOutput cmd_charge(const RunConfig& cfg);
SuiteOutput cmd_density(const RunConfig& cfg);
SuiteOutput cmd_map_params(const RunConfig& cfg);

const std::vector<std::string>& suite_names();
/// Dispatch by subcommand name; throws ConfigError for an unknown name.
SuiteOutput run_suite(const std::string& name, const RunConfig& cfg);

/// Writes <out>/<suite>_report.json and the data files; returns the written paths.
std::vector<std::string> write_outputs(SuiteOutput& out, const RunConfig& cfg);

/// Full CLI: parse, run, write, print a summary. Returns the process exit code
/// (0 all pass, 1 a check failed or a numerical error, 2 configuration error).
int run_cli(int argc, const char* const* argv);

}  // namespace xxzb
