#pragma once

#include <filesystem>
#include <optional>
#include <ostream>

#include "pbts/cli/manifest.hpp"

namespace pbts::cli {

/// Each command returns a process exit status: 0 iff every requested output
/// was written. Diagnostics go to `err` prefixed with "error: ".

/// Backtest: result.json, metrics.csv, cw_curve.csv, selections.csv.
int cmd_run(const RunManifest& manifest, std::ostream& out, std::ostream& err);

/// c sweep: sweep.csv and sweep_summary.csv. Uses manifest.c_list (default
/// 1..l) and manifest.seeds (default seed + i for i < n_seeds).
int cmd_sweep(const RunManifest& manifest, std::ostream& out, std::ostream& err);

/// Prints period count and asset counts before/after the completeness filter.
int cmd_validate(const std::filesystem::path& data, DataFormat format,
                 std::optional<Periodicity> periodicity, std::ostream& out, std::ostream& err);

}  // namespace pbts::cli
