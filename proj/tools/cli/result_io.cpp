#include "pbts/cli/result_io.hpp"

#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "pbts/csv.hpp"
#include "pbts/errors.hpp"

namespace pbts::cli {
namespace {

using nlohmann::json;
using csv::format_double;

json report_to_json(const PerformanceReport& r) {
  return {{"sharpe", r.sharpe},
          {"sharpe_x100", r.sharpe_x100},
          {"cumulative_wealth", r.cumulative_wealth},
          {"max_drawdown_abs", r.max_drawdown_abs},
          {"max_drawdown_rel", r.max_drawdown_rel},
          {"volatility", r.volatility},
          {"mean_return", r.mean_return},
          {"std_return", r.std_return},
          {"zero_variance", r.zero_variance}};
}

PerformanceReport report_from_json(const json& j) {
  PerformanceReport r;
  r.sharpe = j.at("sharpe").get<double>();
  r.sharpe_x100 = j.at("sharpe_x100").get<double>();
  r.cumulative_wealth = j.at("cumulative_wealth").get<double>();
  r.max_drawdown_abs = j.at("max_drawdown_abs").get<double>();
  r.max_drawdown_rel = j.at("max_drawdown_rel").get<double>();
  r.volatility = j.at("volatility").get<double>();
  r.mean_return = j.at("mean_return").get<double>();
  r.std_return = j.at("std_return").get<double>();
  r.zero_variance = j.at("zero_variance").get<bool>();
  return r;
}

std::vector<std::string> arm_names(const std::vector<ArmId>& arms) {
  std::vector<std::string> names;
  for (const auto a : arms) names.emplace_back(arm_name(a));
  return names;
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  body(out);
  out.flush();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace

json result_to_json(const BacktestResult& res) {
  const auto& cfg = res.config;
  json config = {{"tau", cfg.tau},
                 {"c", cfg.c},
                 {"sr_lookback", cfg.sr_lookback},
                 {"seed", cfg.seed},
                 {"ridge_scale", cfg.ridge_scale},
                 {"arms", arm_names(cfg.arms)},
                 {"periodicity", std::string(to_string(res.periodicity))}};

  json selections = json::array();
  for (const auto& s : res.selections) {
    selections.push_back({{"period", s.period},
                          {"thetas", s.thetas},
                          {"chosen_slot", s.chosen_slot},
                          {"arm", std::string(arm_name(s.chosen))},
                          {"outcome", std::string(to_string(s.outcome))},
                          {"success_count", s.success_count}});
  }

  json weights = json::array();
  for (const auto& w : res.weight_trajectory) weights.push_back(to_std(w.values()));

  json counterfactual = json::array();
  for (std::size_t j = 0; j < res.per_arm_counterfactual.arms(); ++j) {
    const auto series = res.per_arm_counterfactual.arm(j);
    counterfactual.push_back(std::vector<double>(series.begin(), series.end()));
  }

  return {{"config", config},
          {"asset_ids", res.asset_ids},
          {"selections", selections},
          {"traded_dates", res.traded_dates},
          {"realized_net_returns", res.realized_net_returns},
          {"weight_trajectory", weights},
          {"cw_curve", res.cw_curve},
          {"report", report_to_json(res.report)},
          {"per_arm_counterfactual", counterfactual},
          {"final_posterior",
           {{"alpha", res.final_posterior.alphas()}, {"beta", res.final_posterior.betas()}}}};
}

BacktestResult result_from_json(const json& doc) {
  try {
    BacktestResult res;
    const auto& cfg = doc.at("config");
    res.config.tau = cfg.at("tau").get<std::size_t>();
    res.config.c = cfg.at("c").get<int>();
    res.config.sr_lookback = cfg.at("sr_lookback").get<std::size_t>();
    res.config.seed = cfg.at("seed").get<std::uint64_t>();
    res.config.ridge_scale = cfg.at("ridge_scale").get<double>();
    res.config.arms.clear();
    for (const auto& a : cfg.at("arms")) res.config.arms.push_back(parse_arm(a.get<std::string>()));
    res.periodicity = parse_periodicity(cfg.at("periodicity").get<std::string>());
    res.asset_ids = doc.at("asset_ids").get<std::vector<std::string>>();

    for (const auto& s : doc.at("selections")) {
      SelectionRecord rec;
      rec.period = s.at("period").get<std::size_t>();
      rec.thetas = s.at("thetas").get<std::vector<double>>();
      rec.chosen_slot = s.at("chosen_slot").get<std::size_t>();
      rec.chosen = parse_arm(s.at("arm").get<std::string>());
      rec.outcome = parse_outcome(s.at("outcome").get<std::string>());
      rec.success_count = s.at("success_count").get<int>();
      res.selections.push_back(std::move(rec));
    }

    res.traded_dates = doc.at("traded_dates").get<std::vector<std::string>>();
    res.realized_net_returns = doc.at("realized_net_returns").get<std::vector<double>>();
    for (const auto& w : doc.at("weight_trajectory")) {
      const auto v = w.get<std::vector<double>>();
      res.weight_trajectory.emplace_back(
          Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
    }
    res.cw_curve = doc.at("cw_curve").get<std::vector<double>>();
    res.report = report_from_json(doc.at("report"));

    const auto& cf = doc.at("per_arm_counterfactual");
    ArmReturnHistory history(cf.size());
    if (!cf.empty()) {
      std::vector<std::vector<double>> series;
      for (const auto& s : cf) series.push_back(s.get<std::vector<double>>());
      for (std::size_t t = 0; t < series.front().size(); ++t) {
        std::vector<double> row;
        for (const auto& s : series) row.push_back(s.at(t));
        history.append(row);
      }
    }
    res.per_arm_counterfactual = std::move(history);

    const auto& post = doc.at("final_posterior");
    res.final_posterior = BetaState(post.at("alpha").get<std::vector<double>>(),
                                    post.at("beta").get<std::vector<double>>());
    return res;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed result document: ") + e.what());
  }
}

void write_metrics_csv(std::ostream& out, const PerformanceReport& r) {
  out << "SR,SR_x100,CW,MDD_abs,MDD_rel,VO\n";
  out << csv::join_line({format_double(r.sharpe), format_double(r.sharpe_x100),
                         format_double(r.cumulative_wealth), format_double(r.max_drawdown_abs),
                         format_double(r.max_drawdown_rel), format_double(r.volatility)})
      << '\n';
}

void write_cw_curve_csv(std::ostream& out, const BacktestResult& res) {
  out << "period,CW\n";
  for (std::size_t t = 0; t < res.cw_curve.size(); ++t) {
    out << csv::join_line({res.traded_dates.at(t), format_double(res.cw_curve[t])}) << '\n';
  }
}

void write_selections_csv(std::ostream& out, const BacktestResult& res) {
  std::vector<std::string> header = {"period", "arm"};
  for (const auto a : res.config.arms) header.push_back("theta_" + std::string(arm_name(a)));
  header.emplace_back("outcome");
  header.emplace_back("success_count");
  out << csv::join_line(header) << '\n';
  for (const auto& s : res.selections) {
    std::vector<std::string> row = {std::to_string(s.period), std::string(arm_name(s.chosen))};
    for (const double th : s.thetas) row.push_back(format_double(th));
    row.emplace_back(to_string(s.outcome));
    row.push_back(std::to_string(s.success_count));
    out << csv::join_line(row) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
  out << "c,seed,SR,CW,MDD_rel,VO\n";
  for (const auto& row : table.rows) {
    out << csv::join_line({std::to_string(row.c), std::to_string(row.seed),
                           format_double(row.report.sharpe),
                           format_double(row.report.cumulative_wealth),
                           format_double(row.report.max_drawdown_rel),
                           format_double(row.report.volatility)})
        << '\n';
  }
}

void write_sweep_summary_csv(std::ostream& out, const SweepTable& table) {
  out << "c,runs,SR_mean,SR_std,CW_mean,CW_std,MDD_rel_mean,MDD_rel_std,VO_mean,VO_std\n";
  for (const auto& s : table.summary) {
    out << csv::join_line({std::to_string(s.c), std::to_string(s.runs),
                           format_double(s.sharpe.mean), format_double(s.sharpe.std),
                           format_double(s.wealth.mean), format_double(s.wealth.std),
                           format_double(s.mdd_rel.mean), format_double(s.mdd_rel.std),
                           format_double(s.volatility.mean), format_double(s.volatility.std)})
        << '\n';
  }
}

void write_run_outputs(const std::filesystem::path& dir, const BacktestResult& result) {
  std::filesystem::create_directories(dir);
  write_file(dir / "result.json",
             [&](std::ostream& o) { o << result_to_json(result).dump(2) << '\n'; });
  write_file(dir / "metrics.csv", [&](std::ostream& o) { write_metrics_csv(o, result.report); });
  write_file(dir / "cw_curve.csv", [&](std::ostream& o) { write_cw_curve_csv(o, result); });
  write_file(dir / "selections.csv", [&](std::ostream& o) { write_selections_csv(o, result); });
}

void write_sweep_outputs(const std::filesystem::path& dir, const SweepTable& table) {
  std::filesystem::create_directories(dir);
  write_file(dir / "sweep.csv", [&](std::ostream& o) { write_sweep_csv(o, table); });
  write_file(dir / "sweep_summary.csv",
             [&](std::ostream& o) { write_sweep_summary_csv(o, table); });
}

}  // namespace pbts::cli
