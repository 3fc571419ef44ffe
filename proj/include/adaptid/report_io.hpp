#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "adaptid/report.hpp"

namespace adaptid {

/// Report document with exactly the fields config, seed, converged_at,
/// final_weights, final_mse_db, trigger_events and curve_file.
nlohmann::json report_to_json(const ExperimentReport& report, const std::string& curve_file);

void write_report_json(const std::filesystem::path& path, const ExperimentReport& report,
                       const std::string& curve_file);

} // namespace adaptid
