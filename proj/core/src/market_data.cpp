#include "pbts/market_data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "pbts/csv.hpp"
#include "pbts/errors.hpp"

namespace pbts {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_shape(const std::vector<std::string>& dates,
                 const std::vector<std::string>& asset_ids, const Eigen::MatrixXd& m) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw InsufficientDataError("panel needs at least one period and one asset");
  }
  if (dates.size() != static_cast<std::size_t>(m.rows())) {
    throw DimensionError("date count " + std::to_string(dates.size()) +
                         " does not match row count " + std::to_string(m.rows()));
  }
  if (asset_ids.size() != static_cast<std::size_t>(m.cols())) {
    throw DimensionError("asset id count " + std::to_string(asset_ids.size()) +
                         " does not match column count " + std::to_string(m.cols()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& d : dates) {
    if (!seen.insert(d).second) throw DataError("duplicate date label '" + d + "'");
  }
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return in;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

bool is_missing_token(std::string_view cell) {
  const auto l = lower(cell);
  return l.empty() || l == "na" || l == "nan" || l == "null";
}

void check_row_width(const csv::Table& table, std::size_t r) {
  const auto& row = table.rows[r];
  if (row.size() != table.header.size()) {
    throw ParseError("expected " + std::to_string(table.header.size()) +
                         " fields, found " + std::to_string(row.size()),
                     table.line_numbers[r], std::min(row.size(), table.header.size()) + 1);
  }
}

RawPanel allocate(const csv::Table& table) {
  if (table.header.size() < 2) {
    throw DataError("CSV needs a date column and at least one asset column");
  }
  if (table.rows.empty()) throw InsufficientDataError("CSV has no data rows");
  RawPanel raw;
  raw.asset_ids.assign(table.header.begin() + 1, table.header.end());
  const auto m = static_cast<Eigen::Index>(table.rows.size());
  const auto n = static_cast<Eigen::Index>(raw.asset_ids.size());
  raw.values = Eigen::MatrixXd::Constant(m, n, kNaN);
  raw.missing = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(m, n, false);
  raw.dates.reserve(table.rows.size());
  std::unordered_set<std::string> seen;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    check_row_width(table, r);
    const auto& date = table.rows[r][0];
    if (date.empty()) throw ParseError("empty date label", table.line_numbers[r], 1);
    if (!seen.insert(date).second) {
      throw DataError("duplicate date label '" + date + "' at row " +
                      std::to_string(table.line_numbers[r]));
    }
    raw.dates.push_back(date);
  }
  return raw;
}

RawPanel read_long_prices(const csv::Table& table) {
  if (table.rows.empty()) throw InsufficientDataError("CSV has no data rows");
  std::vector<std::string> dates;
  std::vector<std::string> assets;
  std::unordered_map<std::string, std::size_t> date_index;
  std::unordered_map<std::string, std::size_t> asset_index;
  std::map<std::pair<std::size_t, std::size_t>, double> cells;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    check_row_width(table, r);
    const auto& row = table.rows[r];
    const auto line = table.line_numbers[r];
    if (row[0].empty()) throw ParseError("empty date label", line, 1);
    if (row[1].empty()) throw ParseError("empty asset label", line, 2);
    auto [dit, dnew] = date_index.try_emplace(row[0], dates.size());
    if (dnew) dates.push_back(row[0]);
    auto [ait, anew] = asset_index.try_emplace(row[1], assets.size());
    if (anew) assets.push_back(row[1]);
    const double price = csv::parse_double(row[2], line, 3);
    if (!(price > 0.0)) {
      throw DataError("non-positive price " + row[2] + " for asset '" + row[1] +
                      "' on " + row[0]);
    }
    if (!cells.emplace(std::make_pair(dit->second, ait->second), price).second) {
      throw DataError("duplicate price for asset '" + row[1] + "' on " + row[0]);
    }
  }
  RawPanel raw;
  raw.dates = std::move(dates);
  raw.asset_ids = std::move(assets);
  const auto m = static_cast<Eigen::Index>(raw.dates.size());
  const auto n = static_cast<Eigen::Index>(raw.asset_ids.size());
  raw.values = Eigen::MatrixXd::Constant(m, n, kNaN);
  raw.missing = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(m, n, true);
  for (const auto& [key, price] : cells) {
    const auto i = static_cast<Eigen::Index>(key.first);
    const auto j = static_cast<Eigen::Index>(key.second);
    raw.values(i, j) = price;
    raw.missing(i, j) = false;
  }
  return raw;
}

}  // namespace

int periods_per_year(Periodicity p) noexcept {
  return p == Periodicity::Monthly ? 12 : 365;
}

std::string_view to_string(Periodicity p) noexcept {
  return p == Periodicity::Monthly ? "monthly" : "daily";
}

Periodicity parse_periodicity(std::string_view text) {
  const auto l = lower(text);
  if (l == "monthly") return Periodicity::Monthly;
  if (l == "daily") return Periodicity::Daily;
  throw ConfigError("unknown periodicity '" + std::string(text) +
                    "' (expected monthly or daily)");
}

PricePanel::PricePanel(std::vector<std::string> dates, std::vector<std::string> asset_ids,
                       Eigen::MatrixXd prices)
    : dates_(std::move(dates)), asset_ids_(std::move(asset_ids)), prices_(std::move(prices)) {
  check_shape(dates_, asset_ids_, prices_);
  for (Eigen::Index i = 0; i < prices_.rows(); ++i) {
    for (Eigen::Index j = 0; j < prices_.cols(); ++j) {
      const double p = prices_(i, j);
      if (!std::isfinite(p) || p <= 0.0) {
        throw DataError("price for asset '" + asset_ids_[static_cast<std::size_t>(j)] +
                        "' on " + dates_[static_cast<std::size_t>(i)] +
                        " must be positive and finite, got " + csv::format_double(p));
      }
    }
  }
}

ReturnPanel::ReturnPanel(std::vector<std::string> dates, std::vector<std::string> asset_ids,
                         Eigen::MatrixXd gross_returns, Periodicity periodicity)
    : dates_(std::move(dates)),
      asset_ids_(std::move(asset_ids)),
      returns_(std::move(gross_returns)),
      periodicity_(periodicity) {
  check_shape(dates_, asset_ids_, returns_);
  for (Eigen::Index i = 0; i < returns_.rows(); ++i) {
    for (Eigen::Index j = 0; j < returns_.cols(); ++j) {
      const double r = returns_(i, j);
      if (!std::isfinite(r) || r <= 0.0) {
        throw DataError("gross return for asset '" +
                        asset_ids_[static_cast<std::size_t>(j)] + "' on " +
                        dates_[static_cast<std::size_t>(i)] +
                        " must be positive and finite, got " + csv::format_double(r));
      }
    }
  }
}

Eigen::VectorXd ReturnPanel::row(std::size_t k) const {
  if (k >= periods()) {
    throw BoundsError("period row " + std::to_string(k) + " out of range [0, " +
                      std::to_string(periods()) + ")");
  }
  return returns_.row(static_cast<Eigen::Index>(k)).transpose();
}

bool operator==(const ReturnPanel& a, const ReturnPanel& b) {
  return a.periodicity_ == b.periodicity_ && a.dates_ == b.dates_ &&
         a.asset_ids_ == b.asset_ids_ && a.returns_.rows() == b.returns_.rows() &&
         a.returns_.cols() == b.returns_.cols() && a.returns_ == b.returns_;
}

CompletenessReport completeness(const RawPanel& raw) {
  CompletenessReport report;
  report.periods = raw.dates.size();
  report.assets_before = raw.asset_ids.size();
  for (Eigen::Index j = 0; j < raw.missing.cols(); ++j) {
    if (raw.missing.col(j).any()) {
      report.dropped.push_back(raw.asset_ids[static_cast<std::size_t>(j)]);
    }
  }
  report.assets_after = report.assets_before - report.dropped.size();
  return report;
}

RawPanel read_ff_returns_table(std::istream& in) {
  const auto table = csv::read_table(in);
  RawPanel raw = allocate(table);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    for (std::size_t c = 1; c < row.size(); ++c) {
      const double pct = csv::parse_double(row[c], table.line_numbers[r], c + 1);
      const auto i = static_cast<Eigen::Index>(r);
      const auto j = static_cast<Eigen::Index>(c - 1);
      if (pct <= kMissingPercentSentinel) {
        raw.missing(i, j) = true;
      } else {
        raw.values(i, j) = 1.0 + pct / 100.0;
      }
    }
  }
  return raw;
}

RawPanel read_ff_returns_table(const std::filesystem::path& path) {
  auto in = open(path);
  return read_ff_returns_table(in);
}

RawPanel read_price_table(std::istream& in) {
  const auto table = csv::read_table(in);
  if (table.header.size() == 3 && lower(table.header[0]) == "date" &&
      lower(table.header[1]) == "asset" && lower(table.header[2]) == "price") {
    return read_long_prices(table);
  }
  RawPanel raw = allocate(table);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    for (std::size_t c = 1; c < row.size(); ++c) {
      const auto i = static_cast<Eigen::Index>(r);
      const auto j = static_cast<Eigen::Index>(c - 1);
      if (is_missing_token(row[c])) {
        raw.missing(i, j) = true;
        continue;
      }
      const double price = csv::parse_double(row[c], table.line_numbers[r], c + 1);
      if (!(price > 0.0)) {
        throw DataError("non-positive price " + row[c] + " for asset '" +
                        raw.asset_ids[c - 1] + "' on " + raw.dates[r] + " (row " +
                        std::to_string(table.line_numbers[r]) + ", column " +
                        std::to_string(c + 1) + ")");
      }
      raw.values(i, j) = price;
    }
  }
  return raw;
}

RawPanel read_price_table(const std::filesystem::path& path) {
  auto in = open(path);
  return read_price_table(in);
}

namespace {

std::pair<std::vector<std::string>, Eigen::MatrixXd> complete_columns(const RawPanel& raw) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < raw.missing.cols(); ++j) {
    if (!raw.missing.col(j).any()) keep.push_back(j);
  }
  if (keep.empty()) throw DataError("no asset has complete data");
  Eigen::MatrixXd values(raw.values.rows(), static_cast<Eigen::Index>(keep.size()));
  std::vector<std::string> ids;
  ids.reserve(keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c) {
    values.col(static_cast<Eigen::Index>(c)) = raw.values.col(keep[c]);
    ids.push_back(raw.asset_ids[static_cast<std::size_t>(keep[c])]);
  }
  return {std::move(ids), std::move(values)};
}

}  // namespace

ReturnPanel filter_complete_assets(const RawPanel& gross, Periodicity periodicity) {
  auto [ids, values] = complete_columns(gross);
  return ReturnPanel(gross.dates, std::move(ids), std::move(values), periodicity);
}

PricePanel filter_complete_prices(const RawPanel& prices) {
  auto [ids, values] = complete_columns(prices);
  return PricePanel(prices.dates, std::move(ids), std::move(values));
}

ReturnPanel load_ff_returns_csv(const std::filesystem::path& path, Periodicity periodicity) {
  return filter_complete_assets(read_ff_returns_table(path), periodicity);
}

PricePanel load_price_panel_csv(const std::filesystem::path& path) {
  return filter_complete_prices(read_price_table(path));
}

ReturnPanel prices_to_returns(const PricePanel& panel, Periodicity periodicity) {
  if (panel.periods() < 2) {
    throw InsufficientDataError("need at least 2 price rows to form returns, got " +
                                std::to_string(panel.periods()));
  }
  const auto& p = panel.prices();
  const Eigen::Index m = p.rows();
  Eigen::MatrixXd gross = p.bottomRows(m - 1).cwiseQuotient(p.topRows(m - 1));
  std::vector<std::string> dates(panel.dates().begin() + 1, panel.dates().end());
  return ReturnPanel(std::move(dates), panel.asset_ids(), std::move(gross), periodicity);
}

ReturnPanel slice_window(const ReturnPanel& panel, std::size_t end, std::size_t len) {
  if (len < 1 || len > end || end > panel.periods()) {
    throw BoundsError("window end=" + std::to_string(end) + " len=" + std::to_string(len) +
                      " invalid for a panel of " + std::to_string(panel.periods()) +
                      " periods (need 1 <= len <= end <= m)");
  }
  const auto first = end - len;
  std::vector<std::string> dates(panel.dates().begin() + static_cast<std::ptrdiff_t>(first),
                                 panel.dates().begin() + static_cast<std::ptrdiff_t>(end));
  Eigen::MatrixXd rows =
      panel.returns().middleRows(static_cast<Eigen::Index>(first), static_cast<Eigen::Index>(len));
  return ReturnPanel(std::move(dates), panel.asset_ids(), std::move(rows), panel.periodicity());
}

}  // namespace pbts
