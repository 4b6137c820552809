#include "pbts/cli/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <set>

#include "pbts/csv.hpp"
#include "pbts/errors.hpp"

namespace pbts::cli {
namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n";
  const auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(kSpace) - first + 1);
}

std::string normalize_key(std::string_view key) {
  std::string out(trim(key));
  for (auto& ch : out) {
    ch = ch == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return out;
}

template <typename T>
T parse_integer(std::string_view text, std::string_view key) {
  text = trim(text);
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw ConfigError("invalid integer '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> items;
  while (true) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) items.push_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return items;
}

}  // namespace

std::string_view to_string(DataFormat f) noexcept {
  return f == DataFormat::FfReturns ? "ff-returns" : "prices";
}

DataFormat parse_data_format(std::string_view text) {
  const auto t = trim(text);
  if (t == "ff-returns") return DataFormat::FfReturns;
  if (t == "prices") return DataFormat::Prices;
  throw ConfigError("unknown data format '" + std::string(t) +
                    "' (expected ff-returns or prices)");
}

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("manifest line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const auto key = normalize_key(view.substr(0, eq));
    if (key.empty()) {
      throw ConfigError("manifest line " + std::to_string(line_no) + ": empty key");
    }
    kv[key] = std::string(trim(view.substr(eq + 1)));
  }
  return kv;
}

KeyValues read_manifest_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest '" + path.string() + "'");
  return parse_key_values(in);
}

Periodicity RunManifest::effective_periodicity() const noexcept {
  if (periodicity) return *periodicity;
  return format == DataFormat::FfReturns ? Periodicity::Monthly : Periodicity::Daily;
}

void RunManifest::validate() const {
  if (data.empty()) throw ConfigError("no dataset given (set --data or 'data =')");
  if (!std::filesystem::is_regular_file(data)) {
    throw ConfigError("dataset '" + data.string() + "' does not exist");
  }
  if (out.empty()) throw ConfigError("output directory must not be empty");
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (const auto item : split_list(text)) out.push_back(parse_integer<int>(item, "c list"));
  return out;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  for (const auto item : split_list(text)) {
    out.push_back(parse_integer<std::uint64_t>(item, "seed list"));
  }
  return out;
}

std::vector<ArmId> parse_arm_list(std::string_view text) {
  std::vector<ArmId> out;
  for (const auto item : split_list(text)) out.push_back(parse_arm(item));
  if (out.empty()) throw ConfigError("arm roster is empty");
  return out;
}

void apply(RunManifest& m, const KeyValues& values) {
  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"data", [&](const std::string& v) { m.data = v; }},
      {"format", [&](const std::string& v) { m.format = parse_data_format(v); }},
      {"periodicity", [&](const std::string& v) { m.periodicity = parse_periodicity(v); }},
      {"tau", [&](const std::string& v) { m.config.tau = parse_integer<std::size_t>(v, "tau"); }},
      {"c", [&](const std::string& v) { m.config.c = parse_integer<int>(v, "c"); }},
      {"sr_lookback",
       [&](const std::string& v) {
         m.config.sr_lookback = parse_integer<std::size_t>(v, "sr_lookback");
       }},
      {"seed",
       [&](const std::string& v) { m.config.seed = parse_integer<std::uint64_t>(v, "seed"); }},
      {"ridge_scale",
       [&](const std::string& v) { m.config.ridge_scale = csv::parse_double(v, 0, 0); }},
      {"arms", [&](const std::string& v) { m.config.arms = parse_arm_list(v); }},
      {"out", [&](const std::string& v) { m.out = v; }},
      {"c_list", [&](const std::string& v) { m.c_list = parse_int_list(v); }},
      {"seeds", [&](const std::string& v) { m.seeds = parse_seed_list(v); }},
      {"n_seeds",
       [&](const std::string& v) { m.n_seeds = parse_integer<std::size_t>(v, "n_seeds"); }},
  };
  for (const auto& [key, value] : values) {
    const auto it = setters.find(normalize_key(key));
    if (it == setters.end()) throw ConfigError("unknown manifest key '" + key + "'");
    try {
      it->second(value);
    } catch (const ParseError&) {
      throw ConfigError("invalid value '" + value + "' for " + key);
    }
  }
}

RunManifest manifest_from(const KeyValues& values) {
  RunManifest m;
  apply(m, values);
  return m;
}

LoadedDataset load_dataset(const std::filesystem::path& path, DataFormat format,
                           Periodicity periodicity) {
  if (format == DataFormat::FfReturns) {
    const auto raw = read_ff_returns_table(path);
    auto report = completeness(raw);
    return {filter_complete_assets(raw, periodicity), std::move(report)};
  }
  const auto raw = read_price_table(path);
  auto report = completeness(raw);
  return {prices_to_returns(filter_complete_prices(raw), periodicity), std::move(report)};
}

}  // namespace pbts::cli
