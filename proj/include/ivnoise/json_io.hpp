#pragma once

#include <string>

#include <json.hpp>

#include "ivnoise/ingest.hpp"
#include "ivnoise/mc.hpp"
#include "ivnoise/multistep.hpp"
#include "ivnoise/noise_moments.hpp"
#include "ivnoise/preavg.hpp"
#include "ivnoise/sim.hpp"

namespace ivnoise {

using nlohmann::json;

// Simulation configs (field names match the struct members).
void to_json(json& j, const OuConfig& c);
void from_json(const json& j, OuConfig& c);
void to_json(json& j, const SvConfig& c);
void from_json(const json& j, SvConfig& c);
void to_json(json& j, const Ar1NoiseConfig& c);
void from_json(const json& j, Ar1NoiseConfig& c);

// Price models carry a "model" discriminator ("ou" | "sv").
json price_model_to_json(const PriceModel& m);
PriceModel price_model_from_json(const json& j);

void to_json(json& j, const PipelineConfig& c);
void from_json(const json& j, PipelineConfig& c);

void to_json(json& j, const NoiseMoments& nm);
void to_json(json& j, const PavGeometry& g);
void to_json(json& j, const PavStats& p);
void to_json(json& j, const IvEstimate& e);
void to_json(json& j, const StepResult& r);
void to_json(json& j, const PipelineReport& r);

json mc_config_to_json(const McConfig& c);
McConfig mc_config_from_json(const json& j);
json mc_report_to_json(const McReport& r, bool include_paths = true);

void to_json(json& j, const IngestReport& r);

// File helpers.
json read_json_file(const std::string& path);
void write_json_file(const json& j, const std::string& path);

// CSV writers for the flat outputs.
void write_noise_moments_csv(const NoiseMoments& nm, const std::string& path,
                             bool as_acf);
void write_block_means_csv(const PavStats& p, const std::string& path);
void write_pipeline_steps_csv(const PipelineReport& r, const std::string& path);
void write_rv_curve_csv(const std::vector<RvCurveRow>& rows,
                        const std::string& path);
void write_qq_csv(const QqData& q, const std::string& path);
void write_acf_bands_csv(const std::vector<AcfBandRow>& rows,
                         const std::string& path);

}  // namespace ivnoise
