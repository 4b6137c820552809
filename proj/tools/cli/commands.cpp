#include "pbts/cli/commands.hpp"

#include <exception>
#include <numeric>
#include <set>

#include "pbts/cli/result_io.hpp"
#include "pbts/errors.hpp"

namespace pbts::cli {
namespace {

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    body();
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int cmd_run(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    manifest.validate();
    const auto data =
        load_dataset(manifest.data, manifest.format, manifest.effective_periodicity());
    const auto result = run_backtest(data.panel, manifest.config);
    write_run_outputs(manifest.out, result);
    const auto& r = result.report;
    out << "periods traded: " << result.realized_net_returns.size() << '\n'
        << "SR: " << r.sharpe << " (x100: " << r.sharpe_x100 << ")\n"
        << "CW: " << r.cumulative_wealth << '\n'
        << "MDD: " << r.max_drawdown_abs << " (relative " << r.max_drawdown_rel << ")\n"
        << "VO: " << r.volatility << '\n'
        << "wrote " << manifest.out.string() << '\n';
  });
}

int cmd_sweep(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    manifest.validate();
    std::vector<int> c_values = manifest.c_list;
    if (c_values.empty()) {
      c_values.resize(manifest.config.arms.size());
      std::iota(c_values.begin(), c_values.end(), 1);
    }
    if (std::set<int>(c_values.begin(), c_values.end()).size() != c_values.size()) {
      throw ConfigError("c list has duplicate values");
    }
    std::vector<std::uint64_t> seeds = manifest.seeds;
    if (seeds.empty()) {
      if (manifest.n_seeds == 0) throw ConfigError("n_seeds must be at least 1");
      for (std::size_t i = 0; i < manifest.n_seeds; ++i) seeds.push_back(manifest.config.seed + i);
    }
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
      throw ConfigError("seed list has duplicate values");
    }
    const auto data =
        load_dataset(manifest.data, manifest.format, manifest.effective_periodicity());
    const auto table = run_c_sweep(data.panel, manifest.config, c_values, seeds);
    write_sweep_outputs(manifest.out, table);
    for (const auto& s : table.summary) {
      out << "c=" << s.c << " runs=" << s.runs << " CW=" << s.wealth.mean << " VO="
          << s.volatility.mean << " MDD_rel=" << s.mdd_rel.mean << '\n';
    }
    out << "wrote " << manifest.out.string() << '\n';
  });
}

int cmd_validate(const std::filesystem::path& data, DataFormat format,
                 std::optional<Periodicity> periodicity, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!std::filesystem::is_regular_file(data)) {
      throw ConfigError("dataset '" + data.string() + "' does not exist");
    }
    const auto raw = format == DataFormat::FfReturns ? read_ff_returns_table(data)
                                                     : read_price_table(data);
    const auto report = completeness(raw);
    out << "format: " << to_string(format) << '\n'
        << "periods: " << report.periods << '\n'
        << "assets: " << report.assets_before << '\n'
        << "kept " << report.assets_after << " of " << report.assets_before << " assets\n";
    for (const auto& id : report.dropped) out << "dropped: " << id << '\n';
    if (report.assets_after == 0) throw DataError("no asset has complete data");
    RunManifest probe;
    probe.format = format;
    probe.periodicity = periodicity;
    const auto panel = format == DataFormat::FfReturns
                           ? filter_complete_assets(raw, probe.effective_periodicity())
                           : prices_to_returns(filter_complete_prices(raw),
                                               probe.effective_periodicity());
    out << "return periods: " << panel.periods() << " (" << to_string(panel.periodicity())
        << ", H=" << panel.periods_per_year() << ")\n";
  });
}

}  // namespace pbts::cli
