#pragma once

// Loading, cleaning and windowing of asset return/price panels.
//
// Two on-disk layouts are supported:
//   * percent-return CSV (Fama-French style): `date,<asset_1>,...,<asset_n>`,
//     each cell a net return in percent; values <= -99.0 mark missing data.
//   * price CSV: the same wide layout holding prices (empty cell = missing),
//     or a long `date,asset,price` layout.
// Assets with any missing period are dropped before a panel is built, so
// PricePanel and ReturnPanel are always dense.

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace pbts {

enum class Periodicity { Monthly, Daily };

/// Rebalances per year: 12 for monthly data, 365 for daily data.
int periods_per_year(Periodicity p) noexcept;
std::string_view to_string(Periodicity p) noexcept;
/// Accepts "monthly" or "daily"; throws ConfigError otherwise.
Periodicity parse_periodicity(std::string_view text);

/// Values <= this in a percent-return file are missing-data sentinels.
inline constexpr double kMissingPercentSentinel = -99.0;

/// Dense m x n matrix of strictly positive prices.
class PricePanel {
 public:
  PricePanel(std::vector<std::string> dates, std::vector<std::string> asset_ids,
             Eigen::MatrixXd prices);

  std::size_t periods() const noexcept { return static_cast<std::size_t>(prices_.rows()); }
  std::size_t assets() const noexcept { return static_cast<std::size_t>(prices_.cols()); }
  const std::vector<std::string>& dates() const noexcept { return dates_; }
  const std::vector<std::string>& asset_ids() const noexcept { return asset_ids_; }
  const Eigen::MatrixXd& prices() const noexcept { return prices_; }

 private:
  std::vector<std::string> dates_;
  std::vector<std::string> asset_ids_;
  Eigen::MatrixXd prices_;
};

/// Dense m x n matrix of gross returns R_{k,i} = P_{k,i} / P_{k-1,i}.
/// Immutable once constructed.
class ReturnPanel {
 public:
  ReturnPanel(std::vector<std::string> dates, std::vector<std::string> asset_ids,
              Eigen::MatrixXd gross_returns, Periodicity periodicity);

  std::size_t periods() const noexcept { return static_cast<std::size_t>(returns_.rows()); }
  std::size_t assets() const noexcept { return static_cast<std::size_t>(returns_.cols()); }
  const std::vector<std::string>& dates() const noexcept { return dates_; }
  const std::vector<std::string>& asset_ids() const noexcept { return asset_ids_; }
  const Eigen::MatrixXd& returns() const noexcept { return returns_; }
  /// Gross returns of every asset in period row `k` (0-based).
  Eigen::VectorXd row(std::size_t k) const;
  Periodicity periodicity() const noexcept { return periodicity_; }
  int periods_per_year() const noexcept { return pbts::periods_per_year(periodicity_); }

  friend bool operator==(const ReturnPanel& a, const ReturnPanel& b);

 private:
  std::vector<std::string> dates_;
  std::vector<std::string> asset_ids_;
  Eigen::MatrixXd returns_;
  Periodicity periodicity_;
};

/// A table as read from disk, before the completeness filter. Missing cells
/// hold NaN in `values` and true in `missing`.
struct RawPanel {
  std::vector<std::string> dates;
  std::vector<std::string> asset_ids;
  Eigen::MatrixXd values;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> missing;
};

struct CompletenessReport {
  std::size_t periods = 0;
  std::size_t assets_before = 0;
  std::size_t assets_after = 0;
  std::vector<std::string> dropped;
};

CompletenessReport completeness(const RawPanel& raw);

/// Percent-return table with values converted to gross returns (1 + v/100).
RawPanel read_ff_returns_table(std::istream& in);
RawPanel read_ff_returns_table(const std::filesystem::path& path);

/// Wide or long price table. Throws DataError on a non-positive price.
RawPanel read_price_table(std::istream& in);
RawPanel read_price_table(const std::filesystem::path& path);

/// Drops every asset with at least one missing period.
ReturnPanel filter_complete_assets(const RawPanel& gross, Periodicity periodicity);
PricePanel filter_complete_prices(const RawPanel& prices);

ReturnPanel load_ff_returns_csv(const std::filesystem::path& path, Periodicity periodicity);
PricePanel load_price_panel_csv(const std::filesystem::path& path);

/// m x n prices to (m-1) x n gross returns; the first date is consumed.
ReturnPanel prices_to_returns(const PricePanel& panel,
                              Periodicity periodicity = Periodicity::Daily);

/// Rows [end - len, end) of `panel`. Requires 1 <= len <= end <= periods.
ReturnPanel slice_window(const ReturnPanel& panel, std::size_t end, std::size_t len);

}  // namespace pbts
