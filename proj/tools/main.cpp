// Command-line front end: simulate / estimate / acf / mc / ingest.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ivnoise/ingest.hpp"
#include "ivnoise/json_io.hpp"
#include "ivnoise/mc.hpp"
#include "ivnoise/multistep.hpp"
#include "ivnoise/sampling.hpp"
#include "ivnoise/sim.hpp"
#include "ivnoise/stats.hpp"

namespace fs = std::filesystem;
using namespace ivnoise;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct SimulateArgs {
  std::string model = "ou";
  std::string config_path;
  std::size_t n_obs = 23401;
  double horizon = 1.0;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  OuConfig ou;
  SvConfig sv;
  Ar1NoiseConfig noise;
};

struct EstimateArgs {
  std::string input;
  double c = 0.2;
  std::size_t j_n = 20;
  std::size_t i_n = 10;
  std::size_t max_lag = 0;  // 0 = use i_n
  std::size_t steps = 2;
  double alpha = 0.05;
  std::string sampling = "none";
  std::string out_dir = "out";
};

struct AcfArgs {
  std::string input;
  std::string mode = "bcrv";
  double c = 0.2;
  std::size_t j_n = 30;
  std::size_t i_n = 15;
  std::size_t max_lag = 30;
  std::size_t fit_lags = 15;
  std::string sampling = "none";
  std::string out_dir = "out";
};

struct McArgs {
  std::string preset;
  std::string config_path;
  std::size_t reps = 0;  // 0 = preset/config default
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::size_t workers = 0;
  std::string out_dir = "out";
};

struct IngestArgs {
  std::string input;
  std::string date_col;
  std::string time_col = "time";
  std::string price_col = "price";
  std::string session = "09:30:00-16:00:00";
  bool log_prices = false;
  bool no_header = false;
  std::string delimiter = ",";
  std::string out_dir = "out";
};

void ensure_dir(const std::string& dir) { fs::create_directories(dir); }

TickSeries load_series(const std::string& path, const std::string& sampling) {
  TickSeries s = read_canonical_csv(path);
  if (sampling == "none" || sampling.empty()) return s;
  if (sampling == "tick") return tick_filter(s);
  if (sampling.rfind("calendar:", 0) == 0) {
    const double step = std::stod(sampling.substr(9));
    return calendar_subsample(s, step);
  }
  throw std::invalid_argument("unknown sampling scheme: " + sampling);
}

int cmd_simulate(const SimulateArgs& args) {
  PriceModel price;
  Ar1NoiseConfig noise = args.noise;
  try {
    if (!args.config_path.empty()) {
      const json cfg = read_json_file(args.config_path);
      price = price_model_from_json(cfg.at("price"));
      cfg.at("noise").get_to(noise);
    } else if (args.model == "ou") {
      price = args.ou;
    } else if (args.model == "sv") {
      price = args.sv;
    } else {
      std::cerr << "error: --model must be ou or sv\n";
      return kExitUsage;
    }
    std::visit([](const auto& cfg) { validate(cfg); }, price);
    validate(noise);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const SimPath path =
        simulate_observed(price, noise, args.n_obs, args.horizon, args.seed);
    ensure_dir(args.out_dir);
    const std::string csv = args.out_dir + "/path.csv";
    write_canonical_csv(path.series, csv);
    json truth;
    truth["true_iv"] = path.true_iv;
    truth["true_sigma2_u"] = path.true_sigma2_u;
    truth["n_obs"] = args.n_obs;
    truth["horizon"] = args.horizon;
    truth["seed"] = args.seed;
    truth["price"] = price_model_to_json(price);
    truth["noise"] = noise;
    write_json_file(truth, args.out_dir + "/truth.json");
    std::cout << "wrote " << csv << " (" << path.series.size()
              << " observations), true_iv=" << path.true_iv << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "simulation failed: " << e.what() << '\n';
    return kExitRuntime;
  }
}

PipelineConfig pipeline_from(const EstimateArgs& args) {
  PipelineConfig cfg;
  cfg.c = args.c;
  cfg.j_n = args.j_n;
  cfg.i_n = args.i_n;
  cfg.max_lag = args.max_lag == 0 ? args.i_n : args.max_lag;
  cfg.alpha = args.alpha;
  return cfg;
}

int cmd_estimate(const EstimateArgs& args) {
  ensure_dir(args.out_dir);
  try {
    const TickSeries s = load_series(args.input, args.sampling);
    const PipelineConfig cfg = pipeline_from(args);
    const PipelineReport report = run_pipeline(s, cfg, args.steps, true);
    write_json_file(json(report), args.out_dir + "/report.json");
    write_pipeline_steps_csv(report, args.out_dir + "/steps.csv");
    for (const auto& step : report.steps) {
      std::printf("step%d: iv=%.6e  ci=[%.6e, %.6e]  sigma2_u=%.6e\n",
                  step.step, step.iv.iv, step.iv.ci_low, step.iv.ci_high,
                  step.noise.sigma2_u);
    }
    const auto& raw = *report.raw_corrected;
    std::printf("raw:   iv=%.6e  ci=[%.6e, %.6e]  sigma2_u=%.6e\n", raw.iv.iv,
                raw.iv.ci_low, raw.iv.ci_high, raw.noise.sigma2_u);
    for (const auto& w : report.warnings) std::cout << "warning: " << w << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "estimation failed: " << e.what() << '\n';
    json partial;
    partial["error"] = e.what();
    partial["input"] = args.input;
    write_json_file(partial, args.out_dir + "/report.json");
    return kExitRuntime;
  }
}

int cmd_acf(const AcfArgs& args) {
  ensure_dir(args.out_dir);
  try {
    const TickSeries s = load_series(args.input, args.sampling);
    PipelineConfig cfg;
    cfg.c = args.c;
    cfg.j_n = args.j_n;
    cfg.i_n = args.i_n;
    cfg.max_lag = std::max(args.max_lag, args.i_n);

    NoiseMoments nm;
    if (args.mode == "bcrv") {
      const PipelineReport rep = run_pipeline(s, cfg, 2);
      nm = rep.steps.back().noise;
    } else if (args.mode == "rv") {
      nm = estimate_noise_moments(s, cfg.j_n, cfg.i_n, cfg.max_lag);
    } else {
      std::cerr << "error: --mode must be rv or bcrv\n";
      return kExitUsage;
    }
    write_noise_moments_csv(nm, args.out_dir + "/gamma.csv", false);
    write_noise_moments_csv(nm, args.out_dir + "/acf.csv", true);

    json fit;
    fit["mode"] = args.mode;
    fit["var_u"] = nm.var_u;
    fit["sigma2_u"] = nm.sigma2_u;
    const std::size_t fit_lags = std::min(args.fit_lags, nm.max_lag());
    if (nm.var_u > 0.0) {
      const double rho = fit_ar1_acf(nm, fit_lags);
      fit["rho_hat"] = rho;
      fit["order_continuation"] = order_continuation_probability(rho);
      try {
        const LogAcfFit lf = log_acf_regression(nm, fit_lags);
        fit["log_acf"] = {{"slope", lf.slope},
                          {"intercept", lf.intercept},
                          {"r_squared", lf.r_squared},
                          {"used_lags", lf.used_lags}};
      } catch (const std::exception& e) {
        fit["log_acf"] = {{"error", e.what()}};
      }
      std::printf("var_u=%.6e sigma2_u=%.6e rho_hat=%.4f continuation=%.4f\n",
                  nm.var_u, nm.sigma2_u, rho,
                  order_continuation_probability(rho));
    }
    write_json_file(fit, args.out_dir + "/acf_fit.json");
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "acf estimation failed: " << e.what() << '\n';
    return kExitRuntime;
  }
}

McConfig benchmark_mc(double rho, std::size_t n_obs) {
  McConfig cfg;
  cfg.design.price = OuConfig{6e-5, 0.5, 1.6, 1.6};
  cfg.design.noise = Ar1NoiseConfig{2.9e-8, 4.3e-8, rho};
  cfg.n_obs = n_obs;
  cfg.n_reps = 1000;
  cfg.pipeline.j_n = 20;
  cfg.pipeline.i_n = 10;
  cfg.pipeline.max_lag = 10;
  cfg.n_steps = 3;
  return cfg;
}

McConfig sv_mc(double rho, std::size_t n_obs) {
  McConfig cfg = benchmark_mc(rho, n_obs);
  cfg.design.price = SvConfig{};
  cfg.design.noise = Ar1NoiseConfig{1.9e-7, 1.3e-7, rho};
  return cfg;
}

struct CellResult {
  std::string label;
  McReport report;
};

void write_table_csv(const std::vector<CellResult>& cells,
                     const std::vector<std::string>& estimators,
                     const std::string& path, bool as_bias) {
  std::ofstream out(path);
  out.precision(10);
  out << "estimator";
  for (const auto& cell : cells) {
    out << ',' << cell.label << "_mean," << cell.label << "_sd";
  }
  out << '\n';
  for (const auto& est : estimators) {
    out << est;
    for (const auto& cell : cells) {
      const auto& ivs = cell.report.iv_paths.at(est);
      if (as_bias) {
        std::vector<double> bias(ivs.size());
        for (std::size_t i = 0; i < ivs.size(); ++i) {
          bias[i] = ivs[i] - cell.report.true_iv_paths[i];
        }
        out << ',' << mean(bias) << ',' << sample_sd(bias);
      } else {
        out << ',' << cell.report.iv.at(est).mean << ','
            << cell.report.iv.at(est).sd;
      }
    }
    out << '\n';
  }
}

int cmd_mc(const McArgs& args) {
  ensure_dir(args.out_dir);
  const std::vector<std::string> row_order{"step1", "raw", "step2", "step3"};

  const auto apply_overrides = [&](McConfig cfg) {
    if (args.reps > 0) cfg.n_reps = args.reps;
    if (args.seed_given) cfg.base_seed = args.seed;
    cfg.workers = args.workers;
    return cfg;
  };

  try {
    if (!args.config_path.empty()) {
      McConfig cfg = mc_config_from_json(read_json_file(args.config_path));
      cfg = apply_overrides(cfg);
      const McReport report = run_mc(cfg);
      write_json_file(mc_report_to_json(report), args.out_dir + "/mc_report.json");
      for (const auto& output : cfg.outputs) {
        if (output == "qq") {
          for (const auto& est : report.estimators) {
            write_qq_csv(qq_data(report, est),
                         args.out_dir + "/qq_" + est + ".csv");
          }
        } else if (output == "acf_bands") {
          write_acf_bands_csv(acf_band_report(cfg, AcfEstimator::bcrv),
                              args.out_dir + "/acf_bands_bcrv.csv");
          write_acf_bands_csv(acf_band_report(cfg, AcfEstimator::rv),
                              args.out_dir + "/acf_bands_rv.csv");
        } else if (output == "rv_curve") {
          const double iv_ref =
              std::holds_alternative<OuConfig>(cfg.design.price)
                  ? std::get<OuConfig>(cfg.design.price).sigma2 * cfg.horizon
                  : std::get<SvConfig>(cfg.design.price).mu2 * cfg.horizon;
          write_rv_curve_csv(
              rv_curve(cfg, 30, {0.8 * iv_ref, iv_ref, 1.2 * iv_ref}),
              args.out_dir + "/rv_curve.csv");
        }
      }
      std::cout << "mc done: " << report.n_paths_ok << " paths in "
                << report.elapsed_seconds << " s\n";
      return 0;
    }

    const std::vector<double> rho_grid{-0.7, -0.3, 0.0, 0.3, 0.7};
    if (args.preset == "table1" || args.preset == "table2") {
      const std::size_t n_obs = args.preset == "table1" ? 23401 : 468001;
      std::vector<CellResult> cells;
      for (double rho : rho_grid) {
        McConfig cfg = apply_overrides(benchmark_mc(rho, n_obs));
        char label[32];
        std::snprintf(label, sizeof(label), "rho=%+.1f", rho);
        cells.push_back({label, run_mc(cfg)});
        std::cout << label << " done in "
                  << cells.back().report.elapsed_seconds << " s\n";
      }
      write_table_csv(cells, row_order,
                      args.out_dir + "/" + args.preset + ".csv", false);
      return 0;
    }
    if (args.preset == "sv-appendix") {
      const std::vector<std::pair<double, std::size_t>> grid{
          {0.7, 117001}, {0.0, 23401}, {-0.7, 58501}};
      std::vector<CellResult> cells;
      for (const auto& [rho, n_obs] : grid) {
        McConfig cfg = apply_overrides(sv_mc(rho, n_obs));
        char label[48];
        std::snprintf(label, sizeof(label), "rho=%+.1f_n=%zu", rho, n_obs - 1);
        cells.push_back({label, run_mc(cfg)});
        std::cout << label << " done\n";
      }
      write_table_csv(cells, row_order, args.out_dir + "/sv_table.csv", true);
      return 0;
    }
    if (args.preset == "qq") {
      for (double rho : rho_grid) {
        McConfig cfg = apply_overrides(benchmark_mc(rho, 468001));
        const McReport report = run_mc(cfg);
        char suffix[32];
        std::snprintf(suffix, sizeof(suffix), "rho%+.1f", rho);
        for (const std::string est : {"raw", "step2"}) {
          const QqData q = qq_data(report, est);
          write_qq_csv(q, args.out_dir + "/qq_" + est + "_" + suffix + ".csv");
          std::cout << est << " " << suffix << " ks=" << q.ks << '\n';
        }
      }
      return 0;
    }
    if (args.preset == "rv-curve") {
      McConfig cfg = apply_overrides(benchmark_mc(-0.7, 23401));
      if (args.reps == 0) cfg.n_reps = 1;  // single-path curve by default
      write_rv_curve_csv(rv_curve(cfg, 30, {0.8 * 6e-5, 6e-5, 1.2 * 6e-5}),
                         args.out_dir + "/rv_curve.csv");
      return 0;
    }
    if (args.preset == "acf-bands") {
      for (double rho : rho_grid) {
        McConfig cfg = apply_overrides(benchmark_mc(rho, 23401));
        cfg.pipeline.max_lag = 20;
        char suffix[32];
        std::snprintf(suffix, sizeof(suffix), "rho%+.1f", rho);
        write_acf_bands_csv(
            acf_band_report(cfg, AcfEstimator::bcrv),
            args.out_dir + "/acf_bands_bcrv_" + suffix + ".csv");
        write_acf_bands_csv(acf_band_report(cfg, AcfEstimator::rv),
                            args.out_dir + "/acf_bands_rv_" + suffix + ".csv");
        std::cout << suffix << " done\n";
      }
      return 0;
    }
    std::cerr << "error: unknown preset '" << args.preset
              << "' (expected table1|table2|sv-appendix|qq|rv-curve|acf-bands"
                 " or --config)\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "mc failed: " << e.what() << '\n';
    return kExitRuntime;
  }
}

int cmd_ingest(const IngestArgs& args) {
  ensure_dir(args.out_dir);
  try {
    IngestSpec spec;
    spec.path = args.input;
    spec.date_column = args.date_col;
    spec.time_column = args.time_col;
    spec.price_column = args.price_col;
    spec.prices_are_log = args.log_prices;
    spec.has_header = !args.no_header;
    if (!args.delimiter.empty()) spec.delimiter = args.delimiter[0];
    if (args.session == "none" || args.session.empty()) {
      spec.session_start.clear();
      spec.session_end.clear();
    } else {
      const auto dash = args.session.find('-');
      if (dash == std::string::npos) {
        std::cerr << "error: --session expects START-END or none\n";
        return kExitUsage;
      }
      spec.session_start = args.session.substr(0, dash);
      spec.session_end = args.session.substr(dash + 1);
    }

    const IngestReport report = load_days(spec);
    write_json_file(json(report), args.out_dir + "/ingest_report.json");
    for (const auto& day : report.days) {
      const std::string name =
          day.date.empty() ? std::string("series") : "day_" + day.date;
      write_canonical_csv(day.series, args.out_dir + "/" + name + ".csv");
    }
    std::cout << "rows_in=" << report.rows_in << " kept=" << report.rows_kept
              << " days=" << report.days.size() << '\n';
    for (const auto& w : report.warnings) std::cout << "warning: " << w << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "ingest failed: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integrated volatility and noise-moment estimation for "
               "high-frequency price series"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Generate an observed log-price path");
  sim->add_option("--model", sim_args.model, "ou | sv");
  sim->add_option("--config", sim_args.config_path, "JSON config file");
  sim->add_option("--n", sim_args.n_obs, "number of observations");
  sim->add_option("--horizon", sim_args.horizon, "time span of the path");
  sim->add_option("--seed", sim_args.seed, "RNG seed");
  sim->add_option("-o,--out", sim_args.out_dir, "output directory");
  sim->add_option("--sigma2", sim_args.ou.sigma2, "OU variance rate");
  sim->add_option("--delta", sim_args.ou.delta, "OU mean reversion");
  sim->add_option("--mu", sim_args.ou.mu, "OU long-run level");
  sim->add_option("--x0", sim_args.ou.x0, "initial log price");
  sim->add_option("--mu1", sim_args.sv.mu1, "SV price level");
  sim->add_option("--kappa", sim_args.sv.kappa, "SV variance mean reversion");
  sim->add_option("--mu2", sim_args.sv.mu2, "SV long-run variance");
  sim->add_option("--gamma-vol", sim_args.sv.gamma_vol, "SV vol of vol");
  sim->add_option("--rho-lev", sim_args.sv.rho_lev, "SV leverage correlation");
  sim->add_option("--sig2-0", sim_args.sv.sig2_0, "SV initial variance");
  sim->add_option("--var-v", sim_args.noise.var_v, "iid noise variance");
  sim->add_option("--var-eps", sim_args.noise.var_eps, "AR(1) noise variance");
  sim->add_option("--rho", sim_args.noise.rho, "AR(1) coefficient");

  EstimateArgs est_args;
  auto* est = app.add_subcommand("estimate", "Run the multi-step estimator");
  est->add_option("input", est_args.input, "canonical CSV input")->required();
  est->add_option("--c", est_args.c, "pre-averaging window constant");
  est->add_option("--jn", est_args.j_n, "variance lag");
  est->add_option("--in", est_args.i_n, "long-run variance cutoff");
  est->add_option("--max-lag", est_args.max_lag, "autocovariance lags");
  est->add_option("--steps", est_args.steps, "number of pipeline steps");
  est->add_option("--alpha", est_args.alpha, "confidence level");
  est->add_option("--sampling", est_args.sampling, "none | tick | calendar:G");
  est->add_option("-o,--out", est_args.out_dir, "output directory");

  AcfArgs acf_args;
  auto* acf = app.add_subcommand("acf", "Noise autocovariance analysis");
  acf->add_option("input", acf_args.input, "canonical CSV input")->required();
  acf->add_option("--mode", acf_args.mode, "rv | bcrv");
  acf->add_option("--c", acf_args.c, "pre-averaging window constant");
  acf->add_option("--jn", acf_args.j_n, "variance lag");
  acf->add_option("--in", acf_args.i_n, "long-run variance cutoff");
  acf->add_option("--max-lag", acf_args.max_lag, "autocovariance lags");
  acf->add_option("--fit-lags", acf_args.fit_lags, "lags used in fits");
  acf->add_option("--sampling", acf_args.sampling, "none | tick | calendar:G");
  acf->add_option("-o,--out", acf_args.out_dir, "output directory");

  McArgs mc_args;
  auto* mc = app.add_subcommand("mc", "Monte Carlo experiments");
  mc->add_option("--preset", mc_args.preset,
                 "table1|table2|sv-appendix|qq|rv-curve|acf-bands");
  mc->add_option("--config", mc_args.config_path, "McConfig JSON file");
  mc->add_option("--reps", mc_args.reps, "replications override");
  mc->add_option("--seed", mc_args.seed, "base seed")
      ->trigger_on_parse()
      ->each([&](const std::string&) { mc_args.seed_given = true; });
  mc->add_option("--workers", mc_args.workers, "worker threads (0 = all)");
  mc->add_option("-o,--out", mc_args.out_dir, "output directory");

  IngestArgs ing_args;
  auto* ing = app.add_subcommand("ingest", "Load tick CSV into per-day series");
  ing->add_option("input", ing_args.input, "CSV file")->required();
  ing->add_option("--date-col", ing_args.date_col, "date column (optional)");
  ing->add_option("--time-col", ing_args.time_col, "time column");
  ing->add_option("--price-col", ing_args.price_col, "price column");
  ing->add_option("--session", ing_args.session, "HH:MM:SS-HH:MM:SS or none");
  ing->add_flag("--log-prices", ing_args.log_prices, "prices already logged");
  ing->add_flag("--no-header", ing_args.no_header, "file has no header row");
  ing->add_option("--delimiter", ing_args.delimiter, "field delimiter");
  ing->add_option("-o,--out", ing_args.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (sim->parsed()) return cmd_simulate(sim_args);
  if (est->parsed()) return cmd_estimate(est_args);
  if (acf->parsed()) return cmd_acf(acf_args);
  if (mc->parsed()) return cmd_mc(mc_args);
  if (ing->parsed()) return cmd_ingest(ing_args);
  return kExitUsage;
}
