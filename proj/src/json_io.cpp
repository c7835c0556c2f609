#include "ivnoise/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace ivnoise {

void to_json(json& j, const OuConfig& c) {
  j = json{{"sigma2", c.sigma2}, {"delta", c.delta}, {"mu", c.mu}, {"x0", c.x0}};
}

void from_json(const json& j, OuConfig& c) {
  c = OuConfig{};
  j.at("sigma2").get_to(c.sigma2);
  j.at("delta").get_to(c.delta);
  if (j.contains("mu")) j.at("mu").get_to(c.mu);
  if (j.contains("x0")) j.at("x0").get_to(c.x0);
}

void to_json(json& j, const SvConfig& c) {
  j = json{{"delta", c.delta},         {"mu1", c.mu1},
           {"kappa", c.kappa},         {"mu2", c.mu2},
           {"gamma_vol", c.gamma_vol}, {"rho_lev", c.rho_lev},
           {"sig2_0", c.sig2_0}};
}

void from_json(const json& j, SvConfig& c) {
  c = SvConfig{};
  j.at("kappa").get_to(c.kappa);
  j.at("mu2").get_to(c.mu2);
  j.at("gamma_vol").get_to(c.gamma_vol);
  if (j.contains("delta")) j.at("delta").get_to(c.delta);
  if (j.contains("mu1")) j.at("mu1").get_to(c.mu1);
  if (j.contains("rho_lev")) j.at("rho_lev").get_to(c.rho_lev);
  c.sig2_0 = j.contains("sig2_0") ? j.at("sig2_0").get<double>() : c.mu2;
}

void to_json(json& j, const Ar1NoiseConfig& c) {
  j = json{{"var_v", c.var_v}, {"var_eps", c.var_eps}, {"rho", c.rho}};
}

void from_json(const json& j, Ar1NoiseConfig& c) {
  c = Ar1NoiseConfig{};
  j.at("var_v").get_to(c.var_v);
  j.at("var_eps").get_to(c.var_eps);
  j.at("rho").get_to(c.rho);
}

json price_model_to_json(const PriceModel& m) {
  json j;
  if (const auto* ou = std::get_if<OuConfig>(&m)) {
    j = *ou;
    j["model"] = "ou";
  } else {
    j = std::get<SvConfig>(m);
    j["model"] = "sv";
  }
  return j;
}

PriceModel price_model_from_json(const json& j) {
  const std::string model = j.at("model").get<std::string>();
  if (model == "ou") return j.get<OuConfig>();
  if (model == "sv") return j.get<SvConfig>();
  throw std::invalid_argument("price model must be 'ou' or 'sv', got " + model);
}

void to_json(json& j, const PipelineConfig& c) {
  j = json{{"c", c.c},
           {"j_n", c.j_n},
           {"i_n", c.i_n},
           {"max_lag", c.max_lag},
           {"alpha", c.alpha}};
}

void from_json(const json& j, PipelineConfig& c) {
  c = PipelineConfig{};
  if (j.contains("c")) j.at("c").get_to(c.c);
  if (j.contains("j_n")) j.at("j_n").get_to(c.j_n);
  if (j.contains("i_n")) j.at("i_n").get_to(c.i_n);
  c.max_lag = j.contains("max_lag") ? j.at("max_lag").get<std::size_t>() : c.i_n;
  if (j.contains("alpha")) j.at("alpha").get_to(c.alpha);
}

void to_json(json& j, const NoiseMoments& nm) {
  j = json{{"var_u", nm.var_u},
           {"gamma", nm.gamma},
           {"sigma2_u", nm.sigma2_u},
           {"j_n", nm.j_n},
           {"i_n", nm.i_n},
           {"bias_corrected", nm.bias_corrected},
           {"negative_var_u", nm.negative_var_u},
           {"negative_sigma2_u", nm.negative_sigma2_u}};
  if (nm.iv_used) j["iv_used"] = *nm.iv_used;
}

void to_json(json& j, const PavGeometry& g) {
  j = json{{"c", g.c}, {"k_n", g.k_n}, {"m_n", g.m_n}, {"n", g.n}};
}

void to_json(json& j, const PavStats& p) {
  j = json{{"geometry", p.geometry}, {"pav2", p.pav2}, {"pav4", p.pav4}};
  if (!p.block_means.empty()) j["block_means"] = p.block_means;
}

void to_json(json& j, const IvEstimate& e) {
  j = json{{"iv", e.iv},
           {"tau", e.tau},
           {"ci_low", e.ci_low},
           {"ci_high", e.ci_high},
           {"sigma2_u_used", e.sigma2_u_used},
           {"alpha", e.alpha},
           {"step", e.step == 0 ? "raw" : "step" + std::to_string(e.step)},
           {"n", e.n},
           {"negative_sigma2_u", e.negative_sigma2_u}};
}

void to_json(json& j, const StepResult& r) {
  j = json{{"step", r.step}, {"noise", r.noise}, {"iv", r.iv}};
}

void to_json(json& j, const PipelineReport& r) {
  j = json{{"steps", r.steps},
           {"config", r.config},
           {"n_steps", r.n_steps},
           {"warnings", r.warnings}};
  if (r.raw_corrected) j["raw_corrected"] = *r.raw_corrected;
}

json mc_config_to_json(const McConfig& c) {
  json j;
  j["design"] = {{"price", price_model_to_json(c.design.price)},
                 {"noise", c.design.noise}};
  j["n_obs"] = c.n_obs;
  j["horizon"] = c.horizon;
  j["n_reps"] = c.n_reps;
  j["base_seed"] = c.base_seed;
  j["pipeline"] = c.pipeline;
  j["n_steps"] = c.n_steps;
  j["workers"] = c.workers;
  j["outputs"] = c.outputs;
  return j;
}

McConfig mc_config_from_json(const json& j) {
  McConfig c;
  c.design.price = price_model_from_json(j.at("design").at("price"));
  j.at("design").at("noise").get_to(c.design.noise);
  j.at("n_obs").get_to(c.n_obs);
  if (j.contains("horizon")) j.at("horizon").get_to(c.horizon);
  if (j.contains("n_reps")) j.at("n_reps").get_to(c.n_reps);
  if (j.contains("base_seed")) j.at("base_seed").get_to(c.base_seed);
  if (j.contains("pipeline")) j.at("pipeline").get_to(c.pipeline);
  if (j.contains("n_steps")) j.at("n_steps").get_to(c.n_steps);
  if (j.contains("workers")) j.at("workers").get_to(c.workers);
  if (j.contains("outputs")) {
    c.outputs = j.at("outputs").get<std::vector<std::string>>();
  }
  return c;
}

json mc_report_to_json(const McReport& r, bool include_paths) {
  json j;
  j["estimators"] = r.estimators;
  json summary;
  for (const auto& name : r.estimators) {
    summary[name] = {{"iv_mean", r.iv.at(name).mean},
                     {"iv_sd", r.iv.at(name).sd},
                     {"var_u_mean", r.var_u.at(name).mean},
                     {"var_u_sd", r.var_u.at(name).sd},
                     {"sigma2_u_mean", r.sigma2_u.at(name).mean},
                     {"sigma2_u_sd", r.sigma2_u.at(name).sd},
                     {"ci_coverage", r.ci_coverage.at(name)}};
  }
  j["summary"] = summary;
  j["n_paths_ok"] = r.n_paths_ok;
  j["failed_paths"] = r.failed_paths;
  j["failure_messages"] = r.failure_messages;
  j["elapsed_seconds"] = r.elapsed_seconds;
  if (include_paths) {
    j["true_iv_paths"] = r.true_iv_paths;
    j["tau_paths"] = r.tau_paths;
    json paths, norm;
    for (const auto& [name, v] : r.iv_paths) paths[name] = v;
    for (const auto& [name, v] : r.normalized) norm[name] = v;
    j["iv_paths"] = paths;
    j["normalized"] = norm;
  }
  return j;
}

void to_json(json& j, const IngestReport& r) {
  json days = json::array();
  for (const auto& d : r.days) {
    days.push_back({{"date", d.date},
                    {"rows", d.series.size()},
                    {"label", d.series.label}});
  }
  json errors = json::array();
  for (const auto& [line, what] : r.parse_errors) {
    errors.push_back({{"line", line}, {"error", what}});
  }
  j = json{{"days", days},
           {"rows_in", r.rows_in},
           {"rows_kept", r.rows_kept},
           {"dropped_session", r.dropped_session},
           {"dropped_nonpositive", r.dropped_nonpositive},
           {"dropped_duplicate_ts", r.dropped_duplicate_ts},
           {"dropped_parse", r.dropped_parse},
           {"parse_errors", errors},
           {"warnings", r.warnings}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

namespace {
std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(12);
  return out;
}
}  // namespace

void write_noise_moments_csv(const NoiseMoments& nm, const std::string& path,
                             bool as_acf) {
  auto out = open_csv(path);
  out << "lag,value\n";
  out << 0 << ',' << (as_acf ? 1.0 : nm.var_u) << '\n';
  for (std::size_t j = 1; j <= nm.max_lag(); ++j) {
    out << j << ',' << (as_acf ? nm.acf_at(j) : nm.gamma_at(j)) << '\n';
  }
}

void write_block_means_csv(const PavStats& p, const std::string& path) {
  auto out = open_csv(path);
  out << "block,preaverage\n";
  for (std::size_t m = 0; m < p.block_means.size(); ++m) {
    out << (m + 1) << ',' << p.block_means[m] << '\n';
  }
}

void write_pipeline_steps_csv(const PipelineReport& r,
                              const std::string& path) {
  auto out = open_csv(path);
  out << "step,var_u,sigma2_u,iv,tau,ci_low,ci_high\n";
  const auto row = [&](const StepResult& s) {
    out << (s.step == 0 ? "raw" : "step" + std::to_string(s.step)) << ','
        << s.noise.var_u << ',' << s.noise.sigma2_u << ',' << s.iv.iv << ','
        << s.iv.tau << ',' << s.iv.ci_low << ',' << s.iv.ci_high << '\n';
  };
  for (const auto& s : r.steps) row(s);
  if (r.raw_corrected) row(*r.raw_corrected);
}

void write_rv_curve_csv(const std::vector<RvCurveRow>& rows,
                        const std::string& path) {
  auto out = open_csv(path);
  out << "j,variant,value\n";
  for (const auto& r : rows) {
    out << r.lag << ',' << r.variant << ',' << r.value << '\n';
  }
}

void write_qq_csv(const QqData& q, const std::string& path) {
  auto out = open_csv(path);
  out << "normal_quantile,sample_quantile\n";
  for (std::size_t i = 0; i < q.sample_q.size(); ++i) {
    out << q.normal_q[i] << ',' << q.sample_q[i] << '\n';
  }
}

void write_acf_bands_csv(const std::vector<AcfBandRow>& rows,
                         const std::string& path) {
  auto out = open_csv(path);
  out << "lag,mean,lo,hi,true_acf\n";
  for (const auto& r : rows) {
    out << r.lag << ',' << r.mean << ',' << r.lo << ',' << r.hi << ','
        << r.true_acf << '\n';
  }
}

}  // namespace ivnoise
