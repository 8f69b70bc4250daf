#pragma once

#include "qce/classify_rank.hpp"
#include "qce/config.hpp"
#include "qce/data_ingest.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace qce::cli {

enum ExitCode : int {
    Success     = 0,
    UsageError  = 1,
    DataError   = 2,
    IoFailure   = 3,
};

/// Runs the command line `args` (args[0] is the program name). Regular output
/// goes to `out`; failures print one "qce: error[<kind>]: <message>" line to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Loads the dataset or canonical panel named in the config.
ParseResult load_panel(const RunConfig& config);

/// The scoring pipeline shared by score, rank and export-geojson:
/// panel -> window average (or per-year scores) -> report.
ClassificationReport build_report(const RunConfig& config, std::vector<Exclusion>* excluded = nullptr);

}
