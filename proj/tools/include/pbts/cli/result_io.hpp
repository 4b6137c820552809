#pragma once

#include <filesystem>
#include <ostream>

#include <nlohmann/json.hpp>

#include "pbts/engine.hpp"

namespace pbts::cli {

/// Full, lossless JSON form of a backtest result (doubles keep round-trip
/// precision, keys are sorted so output is byte-stable).
nlohmann::json result_to_json(const BacktestResult& result);
BacktestResult result_from_json(const nlohmann::json& doc);

// CSV emitters. Numbers use the shortest round-trip decimal form.

/// Header `SR,SR_x100,CW,MDD_abs,MDD_rel,VO` and one data row.
void write_metrics_csv(std::ostream& out, const PerformanceReport& report);
/// Header `period,CW`; period is the traded period's date label.
void write_cw_curve_csv(std::ostream& out, const BacktestResult& result);
/// Header `period,arm,theta_<ARM>...,outcome,success_count`.
void write_selections_csv(std::ostream& out, const BacktestResult& result);
/// Header `c,seed,SR,CW,MDD_rel,VO`.
void write_sweep_csv(std::ostream& out, const SweepTable& table);
/// Header `c,runs,SR_mean,SR_std,CW_mean,CW_std,MDD_rel_mean,MDD_rel_std,VO_mean,VO_std`.
void write_sweep_summary_csv(std::ostream& out, const SweepTable& table);

/// Writes result.json, metrics.csv, cw_curve.csv and selections.csv into
/// `dir` (created if needed). Throws Error if any file cannot be written.
void write_run_outputs(const std::filesystem::path& dir, const BacktestResult& result);
/// Writes sweep.csv and sweep_summary.csv into `dir`.
void write_sweep_outputs(const std::filesystem::path& dir, const SweepTable& table);

}  // namespace pbts::cli
