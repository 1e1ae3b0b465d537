#pragma once

#include <string>
#include <vector>

#include "qsdc/report.hpp"

namespace qsdc {

/// Execute the configured trials (fanned out across worker threads, each
/// trial seeded independently of scheduling) and assemble the report in
/// trial order. Timing lands in the aggregate only when the config asks.
RunReport run(const RunConfig& config);

/// Run a grid of configs and render one CSV row of aggregates per cell.
/// A failing cell is marked failed and the sweep continues.
std::string sweep(const std::vector<RunConfig>& grid);

/// Header row of the sweep CSV, exposed for consumers of the format.
std::string sweep_csv_header();

} // namespace qsdc
