#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "covlab/bounds.hpp"
#include "covlab/problem.hpp"

namespace covlab {

// Stable note embedded in reports so results are interpretable on their own.
std::string methodology_note(const RunConfig& cfg, int verified_depth);

struct CoverReport {
    std::string cover_name;
    std::string source_name;
    std::string target_name;
    int verified_depth = 0; // depth to which map-into-target held at load
    StarReport star;
};

struct AnalyzeOutcome {
    std::vector<CoverReport> reports;
    std::string text;
    int exit_code = 0; // 0 clean, 4 when any report was budget-truncated
};

// Analyzes every cover in the problem (deterministic order) and renders in
// cfg.format. Budget exhaustion yields a partial report with an explicit
// truncation marker and exit code 4 instead of an error.
AnalyzeOutcome run_analyze(const RunConfig& cfg, const Problem& problem);

// Rendering for the bounds subcommands: rows of (key, value) with the
// defining formula echoed.
std::string render_bounds_report(const RunConfig& cfg, const std::string& command,
                                 const std::vector<std::pair<std::string, std::string>>& values,
                                 const std::string& formula);

// Built-in sanity checks; prints one line per check, returns the number of
// failures.
int selftest(std::ostream& out, const RunConfig& cfg);

} // namespace covlab
