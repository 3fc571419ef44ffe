#include "adaptid/report_io.hpp"

#include <fstream>

#include "adaptid/errors.hpp"

namespace adaptid {

using nlohmann::json;

json report_to_json(const ExperimentReport& report, const std::string& curve_file)
{
    json j;
    j["config"] = report.config;
    j["seed"] = report.seed;
    j["converged_at"] = report.converged_at ? json(*report.converged_at) : json(nullptr);
    json w = json::array();
    for (Eigen::Index i = 0; i < report.final_weights.size(); ++i)
        w.push_back(report.final_weights(i));
    j["final_weights"] = w;
    j["final_mse_db"] = report.final_mse_db ? json(*report.final_mse_db) : json(nullptr);
    json events = json::array();
    for (const auto& e : report.trigger_events) {
        events.push_back({{"iteration", e.iteration},
                          {"delta_e", e.delta_e},
                          {"triggered", e.triggered},
                          {"best_candidate_mse_db",
                           e.best_candidate_mse_db ? json(*e.best_candidate_mse_db) : json(nullptr)}});
    }
    j["trigger_events"] = events;
    j["curve_file"] = curve_file;
    return j;
}

void write_report_json(const std::filesystem::path& path, const ExperimentReport& report,
                       const std::string& curve_file)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw InvalidArgument("cannot write " + path.string());
    out << report_to_json(report, curve_file).dump(2) << '\n';
}

} // namespace adaptid
