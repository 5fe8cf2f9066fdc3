#pragma once

#include <string>
#include <vector>

#include "univalence/config.hpp"
#include "univalence/report.hpp"

namespace univalence {

struct PhaseTiming {
    std::string phase;
    double seconds = 0.0;
};

/// Wall times are kept out of the report so that reports stay byte-identical
/// between runs; they go to run.timing instead.
struct RunOutcome {
    RunReport report;
    std::vector<PhaseTiming> timings;
};

/// Config echo keys that describe how a run executes rather than what it
/// computes; left out of the report.
bool is_execution_key(const std::string& key);

/// validate -> check_criterion -> chain diagnostics (on pass, when emitted)
/// -> dilatation and seam (quasiconformal mode) -> oracles. Writes the
/// requested files into config.out_dir. Never throws for numerical or input
/// failures; those end up in the report status.
RunOutcome run(const RunConfig& config);

}  // namespace univalence
