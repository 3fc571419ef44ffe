#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "adaptid/commands.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Adaptive system identification with LMS, GA and LMS-GA"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    auto* run = app.add_subcommand("run", "run one experiment config");
    run->add_option("config", config_path, "experiment config (JSON)")->required();
    run->add_option("--out", out_dir, "artifact directory (default: next to the config)");

    std::string tables_out = "tables";
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t master_seed = 1;
    auto* tables = app.add_subcommand("reproduce-tables", "sweep the four benchmark tables");
    tables->add_option("--out", tables_out, "output directory");
    tables->add_option("--jobs", jobs, "concurrent experiments")->check(CLI::PositiveNumber);
    tables->add_option("--seed", master_seed, "master seed for the per-row seeds");

    std::string spectrum_config;
    std::string spectrum_out;
    std::int64_t order = 0;
    auto* spectrum = app.add_subcommand("spectrum", "input autocorrelation, PSD and eigenvalue spread");
    spectrum->add_option("config", spectrum_config, "experiment config (JSON)")->required();
    spectrum->add_option("--out", spectrum_out, "artifact directory (default: next to the config)");
    auto* order_opt = spectrum->add_option("--order", order, "correlation matrix order")->check(CLI::PositiveNumber);

    std::string curve_path;
    std::int64_t delta = 0;
    auto* gt = app.add_subcommand("estimate-gt", "gradient threshold from a learning curve");
    gt->add_option("curve", curve_path, "learning-curve CSV")->required();
    gt->add_option("--delta", delta, "iterations per gradient window")->required()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : adaptid::kExitError;
    }

    auto optional_path = [](const std::string& s) -> std::optional<std::filesystem::path> {
        if (s.empty())
            return std::nullopt;
        return std::filesystem::path(s);
    };

    if (*run)
        return adaptid::run_config_command(config_path, optional_path(out_dir), std::cout, std::cerr);
    if (*tables) {
        if (const char* env = std::getenv("ADAPTID_SEED"); env && tables->count("--seed") == 0) {
            try {
                master_seed = std::stoull(env);
            } catch (const std::exception&) {
                std::cerr << "error: ADAPTID_SEED must be an unsigned integer\n";
                return adaptid::kExitError;
            }
        }
        return adaptid::reproduce_tables_command(tables_out, jobs, master_seed, std::cout, std::cerr);
    }
    if (*spectrum)
        return adaptid::spectrum_command(spectrum_config, optional_path(spectrum_out),
                                         order_opt->count() ? std::optional<std::int64_t>(order) : std::nullopt,
                                         std::cout, std::cerr);
    return adaptid::estimate_gt_command(curve_path, delta, std::cout, std::cerr);
}
