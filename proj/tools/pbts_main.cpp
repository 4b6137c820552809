// pbts: portfolio bandit backtests from the command line.
//
//   pbts run      --data FILE [--format ff-returns|prices] [--tau N] [--c N] ...
//   pbts sweep    --data FILE --c-list 1,3,5 --seeds 1,2,3 ...
//   pbts validate --data FILE [--format ...]
//
// Every run/sweep option may also come from `--manifest FILE`; flags win.

#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "pbts/cli/commands.hpp"
#include "pbts/cli/manifest.hpp"

namespace {

struct Flags {
  std::string manifest;
  std::vector<std::pair<std::string, std::optional<std::string>>> values = {
      {"data", {}},        {"format", {}},      {"periodicity", {}}, {"tau", {}},
      {"c", {}},           {"sr_lookback", {}}, {"seed", {}},        {"ridge_scale", {}},
      {"arms", {}},        {"out", {}},         {"c_list", {}},      {"seeds", {}},
      {"n_seeds", {}},
  };

  std::optional<std::string>& operator[](const std::string& key) {
    for (auto& [k, v] : values) {
      if (k == key) return v;
    }
    throw std::logic_error("unknown flag " + key);
  }
};

void add_run_options(CLI::App* cmd, Flags& f) {
  cmd->add_option("--manifest", f.manifest, "key = value manifest file");
  cmd->add_option("--data", f["data"], "dataset CSV");
  cmd->add_option("--format", f["format"], "ff-returns (percent returns) or prices");
  cmd->add_option("--periodicity", f["periodicity"], "monthly (H=12) or daily (H=365)");
  cmd->add_option("--tau", f["tau"], "sliding window length (default 120)");
  cmd->add_option("--c", f["c"], "success threshold in [1, number of arms]");
  cmd->add_option("--sr-lookback", f["sr_lookback"], "Sharpe lookback periods (default 36)");
  cmd->add_option("--seed", f["seed"], "random seed");
  cmd->add_option("--ridge-scale", f["ridge_scale"], "covariance ridge scale (default 1e-6)");
  cmd->add_option("--arms", f["arms"], "arm roster, e.g. BH,SA,EW,VW,MV");
  cmd->add_option("--out", f["out"], "output directory");
}

pbts::cli::RunManifest build_manifest(Flags& f) {
  pbts::cli::KeyValues kv;
  if (!f.manifest.empty()) kv = pbts::cli::read_manifest_file(f.manifest);
  for (const auto& [key, value] : f.values) {
    if (value) kv[key] = *value;
  }
  return pbts::cli::manifest_from(kv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Portfolio bandit via Thompson sampling: backtests, c sweeps, data checks"};
  app.require_subcommand(1);

  Flags flags;
  auto* run = app.add_subcommand("run", "run one backtest and write its result files");
  add_run_options(run, flags);

  auto* sweep = app.add_subcommand("sweep", "backtest every (c, seed) pair");
  add_run_options(sweep, flags);
  sweep->add_option("--c-list", flags["c_list"], "comma separated c values (default 1..l)");
  sweep->add_option("--seeds", flags["seeds"], "comma separated distinct seeds");
  sweep->add_option("--n-seeds", flags["n_seeds"],
                    "number of seeds seed, seed+1, ... when --seeds is absent (default 20)");

  std::string validate_data;
  std::string validate_format = "ff-returns";
  std::optional<std::string> validate_periodicity;
  auto* validate = app.add_subcommand("validate", "report periods and assets kept after cleaning");
  validate->add_option("--data", validate_data, "dataset CSV")->required();
  validate->add_option("--format", validate_format, "ff-returns or prices");
  validate->add_option("--periodicity", validate_periodicity, "monthly or daily");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run || *sweep) {
      const auto manifest = build_manifest(flags);
      return *run ? pbts::cli::cmd_run(manifest, std::cout, std::cerr)
                  : pbts::cli::cmd_sweep(manifest, std::cout, std::cerr);
    }
    std::optional<pbts::Periodicity> periodicity;
    if (validate_periodicity) periodicity = pbts::parse_periodicity(*validate_periodicity);
    return pbts::cli::cmd_validate(validate_data, pbts::cli::parse_data_format(validate_format),
                                   periodicity, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
