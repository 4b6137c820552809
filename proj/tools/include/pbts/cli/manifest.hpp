#pragma once

// Run manifests: a flat `key = value` text file (with `#` comments) that
// pins every input of a backtest or sweep. Command line flags are layered on
// top of the file and win on conflict.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbts/engine.hpp"
#include "pbts/market_data.hpp"

namespace pbts::cli {

enum class DataFormat { FfReturns, Prices };

std::string_view to_string(DataFormat f) noexcept;
/// "ff-returns" or "prices".
DataFormat parse_data_format(std::string_view text);

using KeyValues = std::map<std::string, std::string>;

/// Keys are normalized to lower case with '-' folded to '_'. Later
/// duplicates overwrite earlier ones.
KeyValues parse_key_values(std::istream& in);
KeyValues read_manifest_file(const std::filesystem::path& path);

struct RunManifest {
  std::filesystem::path data;
  DataFormat format = DataFormat::FfReturns;
  std::optional<Periodicity> periodicity;
  BacktestConfig config;
  std::filesystem::path out = "pbts_out";
  std::vector<int> c_list;
  std::vector<std::uint64_t> seeds;
  std::size_t n_seeds = 20;

  /// Explicit periodicity, else monthly for percent returns and daily for
  /// prices.
  Periodicity effective_periodicity() const noexcept;
  /// Checks that the data file exists. Config invariants that depend on the
  /// panel length are checked once the data is loaded.
  void validate() const;
};

/// Applies recognised keys onto `manifest`; unknown keys and malformed
/// values raise ConfigError.
void apply(RunManifest& manifest, const KeyValues& values);

RunManifest manifest_from(const KeyValues& values);

std::vector<int> parse_int_list(std::string_view text);
std::vector<std::uint64_t> parse_seed_list(std::string_view text);
std::vector<ArmId> parse_arm_list(std::string_view text);

struct LoadedDataset {
  ReturnPanel panel;
  CompletenessReport completeness;
};

LoadedDataset load_dataset(const std::filesystem::path& path, DataFormat format,
                           Periodicity periodicity);

}  // namespace pbts::cli
