#include "adaptid/commands.hpp"

#include <fstream>

#include "adaptid/config.hpp"
#include "adaptid/csv.hpp"
#include "adaptid/report_io.hpp"
#include "adaptid/spectral.hpp"
#include "adaptid/tables.hpp"

namespace adaptid {

namespace {

std::filesystem::path artifact_dir(const std::filesystem::path& config_path,
                                   const std::optional<std::filesystem::path>& out_dir)
{
    std::filesystem::path dir = out_dir ? *out_dir : config_path.parent_path();
    if (dir.empty())
        dir = ".";
    std::filesystem::create_directories(dir);
    return dir;
}

void print_error(std::ostream& err, const std::exception& e)
{
    err << "error: " << e.what();
    if (const auto* ce = dynamic_cast<const ConfigError*>(&e); ce && !ce->key().empty())
        err << " (key: " << ce->key() << ")";
    err << '\n';
}

} // namespace

int run_config_command(const std::filesystem::path& config_path, const std::optional<std::filesystem::path>& out_dir,
                       std::ostream& out, std::ostream& err)
{
    try {
        const ExperimentConfig cfg = load_experiment_config(config_path, seed_from_environment());
        ExperimentReport report;
        try {
            report = run_experiment(cfg);
        } catch (const DivergenceError& e) {
            err << "diverged";
            if (e.iteration())
                err << " at iteration " << *e.iteration();
            err << ": " << e.what() << '\n';
            return kExitNotConverged;
        }

        const auto dir = artifact_dir(config_path, out_dir);
        const std::string stem = config_path.stem().string();
        const std::string curve_file = stem + ".curve.csv";
        write_curve_csv(dir / curve_file, report.curve);
        write_report_json(dir / (stem + ".report.json"), report, curve_file);
        if (report.feedback_order > 0 || cfg.structure.recursive)
            write_coefficients_csv(dir / (stem + ".coeffs.csv"), report.feedforward(), report.feedback());
        if (cfg.method == Method::LmsGa)
            write_trigger_csv(dir / (stem + ".triggers.csv"), report.trigger_events);

        out << "method " << to_string(cfg.method) << ", seed " << cfg.seed << ", " << report.iterations()
            << " iterations";
        if (report.final_mse_db)
            out << ", final MSE " << format_number(*report.final_mse_db) << " dB";
        out << '\n';
        if (!report.converged_at) {
            out << "not converged\n";
            return kExitNotConverged;
        }
        out << "converged at iteration " << *report.converged_at << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        print_error(err, e);
        return kExitError;
    }
}

int reproduce_tables_command(const std::filesystem::path& out_dir, unsigned jobs, std::uint64_t master_seed,
                             std::ostream& out, std::ostream& err)
{
    try {
        const auto result = reproduce_tables(out_dir, jobs, master_seed);
        std::size_t failed = 0;
        for (const auto& row : result.rows)
            if (!row.report)
                ++failed;
        for (const auto& f : result.files)
            out << f.string() << '\n';
        if (failed > 0)
            out << failed << " of " << result.rows.size() << " rows failed; see the status column\n";
        return kExitOk;
    } catch (const std::exception& e) {
        print_error(err, e);
        return kExitError;
    }
}

int spectrum_command(const std::filesystem::path& config_path, const std::optional<std::filesystem::path>& out_dir,
                     std::optional<std::int64_t> order, std::ostream& out, std::ostream& err)
{
    try {
        const ExperimentConfig cfg = load_experiment_config(config_path, seed_from_environment());
        cfg.validate();
        const TrainingRecord rec = make_training_record(cfg);
        const Eigen::Index n = order ? *order : cfg.structure.gene_count();
        if (n < 1)
            throw InvalidArgument("order must be at least 1");

        const auto r = autocorr_estimate(rec.x, n);
        const auto eigs = sym_eigenvalues(toeplitz_from_autocorr(r, n));
        const auto psd = psd_from_autocorr(r);
        const auto range = psd_range(r);

        const auto dir = artifact_dir(config_path, out_dir);
        const std::string stem = config_path.stem().string();
        write_autocorr_csv(dir / (stem + ".autocorr.csv"), r);
        write_psd_csv(dir / (stem + ".psd.csv"), psd);
        write_eigenvalues_csv(dir / (stem + ".eigenvalues.csv"), eigs);

        nlohmann::json summary = {{"order", n},
                                  {"lambda_min", eigs.minCoeff()},
                                  {"lambda_max", eigs.maxCoeff()},
                                  {"psd_min", range.min},
                                  {"psd_max", range.max}};
        try {
            const auto est = convergence_estimate(eigs, cfg.mu);
            summary["disparity"] = est.disparity;
            summary["tau"] = est.tau;
            summary["mu_bound"] = est.mu_bound;
        } catch (const DegenerateSpectrumError& e) {
            summary["disparity"] = nullptr;
            summary["tau"] = nullptr;
            summary["mu_bound"] = nullptr;
            err << "warning: " << e.what() << '\n';
        }
        std::ofstream(dir / (stem + ".spectrum.json")) << summary.dump(2) << '\n';
        out << summary.dump(2) << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        print_error(err, e);
        return kExitError;
    }
}

int estimate_gt_command(const std::filesystem::path& curve_csv, std::int64_t delta, std::ostream& out,
                        std::ostream& err)
{
    try {
        const auto est = estimate_gt(read_curve_csv(curve_csv), delta);
        out << "gt " << format_number(est.gt) << "\nplateau " << est.plateau_start << ' ' << est.plateau_end << '\n';
        return kExitOk;
    } catch (const NoPlateauError& e) {
        err << "no plateau: " << e.what() << '\n';
        return kExitNotConverged;
    } catch (const std::exception& e) {
        print_error(err, e);
        return kExitError;
    }
}

} // namespace adaptid
